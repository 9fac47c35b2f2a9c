"""Extremal families: bump trains, lacunary wavelet series, multiplier pairs, and the standard test family.

The placements used in the literature (``4 m l`` for trains, ``j 2^j`` and
``4^j`` for wavelets) overflow a fixed torus almost immediately.  Here every
placement is remapped to integer cells that keep supports pairwise disjoint,
which is the only property the norm identities rely on; the remap is
recorded in each ExtremalSpec's ``metadata``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from ..errors import PlacementError
from ..grid import SampledFunction
from ..localization import PLATEAU, build_pou
from ..wavelet import WaveletCoeffs, WaveletSystem, synthesize

__all__ = [
    "ExtremalSpec",
    "smooth_bump",
    "train_spacing",
    "bump_train",
    "place_wavelet",
    "plateau_levels",
    "lacunary_coeffs",
    "lacunary_wavelet_series",
    "multiplier_pair",
    "standard_family",
]


@dataclass
class ExtremalSpec:
    """Description of one extremal construction."""

    kind: str
    heights: list
    levels: tuple = None
    spacing: int = None
    cells: list = None
    metadata: dict = field(default_factory=dict)

    @property
    def count(self):
        return len(self.heights)


def smooth_bump(grid, center, radius=PLATEAU, height=1.0):
    """``height * exp(1 - 1/(1 - |x - c|^2 / radius^2))`` supported in the open ball of ``radius``."""
    deltas = grid.periodic_coords(np.broadcast_to(np.asarray(center, dtype=float), (grid.d,)))
    t2 = sum(dl**2 for dl in deltas) / radius**2
    out = np.zeros(grid.shape)
    inside = t2 < 1
    out[inside] = height * np.exp(1.0 - 1.0 / (1.0 - t2[inside]))
    return out


def _cell(grid, c):
    """Integer cell index -> point on the torus (axis 0 carries the placement)."""
    if grid.d == 1:
        return (float(c),)
    return (float(c), float(grid.W // 2))


def train_spacing(grid, count, m):
    """Cell spacing for ``count`` bumps: ``4m`` when it fits, otherwise the widest even split.

    Spacing must exceed ``2 * PLATEAU + m`` so that ``m``-th differences with
    steps below 1 of different bumps never overlap.
    """
    spacing = min(4 * m, grid.W // count)
    if spacing < m + 1:
        raise PlacementError(
            f"{count} bumps with difference order m={m} need spacing >= {m + 1}, "
            f"torus W={grid.W} allows {grid.W // count}"
        )
    return spacing


def bump_train(grid, heights, spacing, start=0, radius=PLATEAU):
    """``sum_l C_l phi(x - mu_l)`` with ``mu_l = start + l * spacing`` (cells, axis 0)."""
    n = len(heights)
    if n * spacing > grid.W:
        raise PlacementError(f"{n} bumps at spacing {spacing} overflow torus W={grid.W}")
    vals = np.zeros(grid.shape)
    for ell, c in enumerate(heights):
        vals += smooth_bump(grid, _cell(grid, start + ell * spacing), radius, c)
    return SampledFunction(grid, vals)


def _circular_extent(mask):
    idx = np.nonzero(mask)[0]
    n = mask.size
    if idx.size == 0:
        raise PlacementError("empty support")
    gaps = np.diff(np.concatenate([idx, [idx[0] + n]]))
    g = int(np.argmax(gaps))
    start = idx[(g + 1) % idx.size]
    length = n - (gaps[g] - 1)
    return int(start), int(length)


@functools.lru_cache(maxsize=64)
def _base_extent(grid, ws, j, i):
    c = WaveletCoeffs.zeros(grid)
    blk = c.details[j]
    if grid.d == 1:
        blk[0] = 1.0
    else:
        blk[(i - 1, 0, 0)] = 1.0
    v = synthesize(c, ws).values
    nz = v != 0
    ext = []
    for axis in range(grid.d):
        other = tuple(a for a in range(grid.d) if a != axis)
        ext.append(_circular_extent(nz.any(axis=other) if other else nz))
    return tuple(ext)


def place_wavelet(grid, ws, j, cell, i=1, plateau=PLATEAU):
    """Index ``k`` putting the sampled support of ``psi_{i,j,k}`` inside the plateau around ``cell``.

    Raises :class:`PlacementError` when the support is wider than the plateau.
    """
    step = 2 ** (grid.r - j)
    n_j = grid.W * 2**j
    target = _cell(grid, cell)
    k = []
    for axis, (start, length) in enumerate(_base_extent(grid, ws, j, i)):
        T = target[axis] * grid.stride
        C = start + (length - 1) / 2.0
        delta = (T - C + grid.N / 2) % grid.N - grid.N / 2
        shift = int(round(delta / step))
        lo = (start + shift * step - T + grid.N / 2) % grid.N - grid.N / 2  # relative to T
        hi = lo + length - 1
        half = plateau * grid.stride
        if lo < -half - 1e-9 or hi > half + 1e-9:
            raise PlacementError(
                f"level-{j} wavelet spans {length} samples; plateau holds {int(2 * half) + 1} "
                f"(grid {grid}, {ws.name})"
            )
        k.append(shift % n_j)
    return tuple(k)


def plateau_levels(grid, ws=None):
    """Detail levels whose wavelets fit inside one plateau of the partition of unity."""
    ws = WaveletSystem() if ws is None else ws
    out = []
    for j in range(grid.r):
        try:
            place_wavelet(grid, ws, j, 0)
        except PlacementError:
            continue
        out.append(j)
    return out


def lacunary_coeffs(grid, alphas, cells, ws=None, i=1):
    """Coefficients with one entry ``alpha_j`` per level, at the wavelet placed in ``cells[j]``."""
    ws = WaveletSystem() if ws is None else ws
    c = WaveletCoeffs.zeros(grid)
    for j, a in alphas.items():
        k = place_wavelet(grid, ws, j, cells[j], i)
        if grid.d == 1:
            c.details[j][k[0]] = a
        else:
            c.details[j][(i - 1,) + k] = a
    return c


def lacunary_wavelet_series(grid, alphas, cells, ws=None):
    """``sum_j alpha_j psi_{1,j,mu_j}`` synthesized from a single coefficient per level."""
    return synthesize(lacunary_coeffs(grid, alphas, cells, ws), ws)


def level_cells(levels, spacing, start=None):
    start = spacing // 2 if start is None else start
    return {j: start + t * spacing for t, j in enumerate(levels)}


def multiplier_pair(grid, levels, gammas, params, ws=None, spacing=4):
    """``f = sum_j alpha_j psi_{1,j,mu_j}`` with ``alpha_j = gamma_j 2^{-j(s + d/2 - d/p)}``
    and ``g = sum_j psi(x - c_j)`` over the same cells, so ``f g = f`` exactly.
    """
    ws = WaveletSystem() if ws is None else ws
    levels = list(levels)
    if len(levels) * spacing > grid.W:
        raise PlacementError(f"{len(levels)} levels at spacing {spacing} overflow torus W={grid.W}")
    cells = level_cells(levels, spacing)
    d = grid.d
    expo = params.s + d / 2.0 - d * params.inv_p
    alphas = {j: gm * 2.0 ** (-j * expo) for j, gm in zip(levels, gammas)}
    f = lacunary_wavelet_series(grid, alphas, cells, ws)
    pou = build_pou(grid)
    g = np.zeros(grid.shape)
    for j in levels:
        g += pou.translate(_cell(grid, cells[j]) if d == 1 else (cells[j], grid.W // 2))
    spec = ExtremalSpec(
        "multiplier_pair",
        list(gammas),
        levels=(levels[0], levels[-1]),
        spacing=spacing,
        cells=[cells[j] for j in levels],
        metadata={"placement": "remapped to disjoint cells", "family": ws.name},
    )
    return f, SampledFunction(grid, g), spec


def _band_limited(grid, rng, cap):
    xi = 2 * np.pi * np.fft.fftfreq(grid.N, d=grid.dx)
    mag = np.sqrt(sum(a**2 for a in np.meshgrid(*([xi] * grid.d), indexing="ij")))
    sel = (mag <= cap) & (mag > 0)
    F = np.zeros(grid.shape, dtype=complex)
    F[sel] = rng.standard_normal(sel.sum()) + 1j * rng.standard_normal(sel.sum())
    v = np.fft.ifftn(F).real
    return v / np.abs(v).max()


def standard_family(grid, seed=0, ws=None, m=2):
    """Frozen 50-member family: 20 band-limited, 20 sparse wavelet series, 10 bump trains.

    Returns ``(label, SampledFunction)`` pairs, identical for a fixed seed.
    """
    ws = WaveletSystem() if ws is None else ws
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    caps = [1.0, 2.0, 4.0, 8.0, 16.0]
    for n in range(20):
        cap = caps[n % len(caps)]
        out.append((f"bandlimited-{n}-cap{cap:g}", SampledFunction(grid, _band_limited(grid, rng, cap))))
    n_cells = grid.W ** grid.d
    for n in range(20):
        c = WaveletCoeffs.zeros(grid)
        for _ in range(int(rng.integers(1, 7))):
            j = int(rng.integers(0, grid.r))
            blk = c.details[j]
            idx = tuple(int(rng.integers(0, s)) for s in blk.shape)
            blk[idx] = rng.standard_normal() * 2.0 ** (-j * grid.d / 2.0)
        if rng.random() < 0.5:
            c.scaling[tuple(int(rng.integers(0, grid.W)) for _ in range(grid.d))] = rng.standard_normal()
        out.append((f"wavelets-{n}", synthesize(c, ws)))
    for n in range(10):
        count = n + 1
        spacing = min(4 * m, max(m + 1, grid.W // count))
        count = min(count, grid.W // spacing)
        heights = rng.uniform(0.5, 2.0, size=count)
        start = int(rng.integers(0, n_cells if grid.d == 1 else grid.W))
        out.append((f"bumptrain-{n}", bump_train(grid, list(heights), spacing, start % grid.W)))
    return out
