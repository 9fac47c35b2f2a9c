"""Moduli of smoothness and the difference characterization of Besov norms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError
from .grid import difference_array, lp_norm_array
from .params import NormBreakdown, lq_sum

__all__ = [
    "ModulusProfile",
    "directions",
    "admissible_shifts",
    "shift_schedule",
    "default_k_cap",
    "modulus",
    "modulus_profile",
    "besov_norm_difference",
]


def directions(d):
    """Integer step directions probed by the modulus: the axis, or axes plus diagonals."""
    if d == 1:
        return [(1,)]
    return [(1, 0), (0, 1), (1, 1), (1, -1)]


def admissible_shifts(grid, t):
    """Lattice shifts ``h`` with physical length ``|h| < t`` used to approximate the sup.

    Per direction the step multiples are ``t(1 - 2^-j)`` snapped down to the
    lattice (``j = 1, 2, 3``) plus the largest multiple strictly below ``t``.
    """
    t = float(t)
    shifts = []
    for u in directions(grid.d):
        step = math.sqrt(sum(c * c for c in u)) * grid.dx
        n_max = math.ceil(t / step) - 1
        cands = {math.floor(t * (1 - 2.0**-j) / step) for j in (1, 2, 3)} | {n_max}
        for n in sorted(cands):
            if 1 <= n <= n_max and n * max(abs(c) for c in u) < grid.N:
                shifts.append(tuple(n * c for c in u))
    if not shifts:
        floor = min(math.sqrt(sum(c * c for c in u)) for u in directions(grid.d)) * grid.dx
        raise GridError(
            f"scale t={t:g} is below the minimum resolvable scale; need t > {floor:g}"
        )
    return shifts


def default_k_cap(grid):
    """Finest dyadic scale index probed: ``2^-K_cap = 2 dx``."""
    if grid.r < 1:
        raise GridError("difference norms need r >= 1 (at least two samples per unit)")
    return grid.r - 1


def shift_schedule(grid, k_cap=None):
    """Shift sets for ``t = 2^-k``, ``k = 0 .. k_cap``."""
    k_cap = default_k_cap(grid) if k_cap is None else int(k_cap)
    return [admissible_shifts(grid, 2.0**-k) for k in range(k_cap + 1)]


@dataclass(frozen=True)
class ModulusProfile:
    m: int
    p: float
    scales: list
    values: list


def _moduli(values, grid, m, p, schedule):
    cache = {}
    out = []
    for shifts in schedule:
        best = 0.0
        for h in shifts:
            if h not in cache:
                cache[h] = lp_norm_array(difference_array(values, h, m), p, grid.cell)
            best = max(best, cache[h])
        out.append(best)
    return out


def modulus(f, m, t, p):
    """``omega_m(f, t)_p``: max of ``||Delta_h^m f||_p`` over the admissible shifts below ``t``."""
    if int(m) < 1:
        raise GridError(f"difference order must be >= 1, got {m}")
    return _moduli(f.values, f.grid, int(m), float(p), [admissible_shifts(f.grid, t)])[0]


def modulus_profile(f, m, p, k_cap=None):
    schedule = shift_schedule(f.grid, k_cap)
    vals = _moduli(f.values, f.grid, int(m), float(p), schedule)
    return ModulusProfile(int(m), float(p), list(range(len(schedule))), vals)


def besov_norm_difference(f, params, k_cap=None):
    """``||f||_p + (sum_k (2^ks omega_m(f, 2^-k)_p)^q)^(1/q)`` for ``k = 0 .. k_cap``.

    Scales finer than ``2 dx`` are not resolvable and are dropped; the cap is
    recorded in ``metadata``.
    """
    params.require_difference(f.grid.d)
    schedule = shift_schedule(f.grid, k_cap)
    om = _moduli(f.values, f.grid, params.m, params.p, schedule)
    terms = [2.0 ** (k * params.s) * w for k, w in enumerate(om)]
    lp = lp_norm_array(f.values, params.p, f.grid.cell)
    return NormBreakdown(
        "difference",
        params,
        lp + lq_sum(terms, params.q),
        terms,
        lp_term=lp,
        metadata={"k_cap": len(schedule) - 1},
    )


def difference_power_table(values, grid, m, p, schedule):
    """``||Delta_h^m g||_p`` for every (scale, shift) pair, as a ragged list per scale."""
    cache = {}
    table = []
    for shifts in schedule:
        row = []
        for h in shifts:
            if h not in cache:
                cache[h] = lp_norm_array(difference_array(values, h, m), p, grid.cell)
            row.append(cache[h])
        table.append(np.array(row))
    return table
