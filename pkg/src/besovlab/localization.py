"""Partition of unity, uniform and v-localized Besov norms, and the multiplier functional.

The multiplier functional is the quantity whose supremum over the ``l_p``
unit ball of coefficient sequences ``C_mu`` defines the ``M^s_{p,q}`` norm.
Only lower bounds on that supremum are ever produced here.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bands import besov_norm_fourier, smooth_step
from .errors import GridError, ParameterError
from .grid import SampledFunction, lp_norm_array
from .params import lq_sum, parse_exponent
from .smoothness import besov_norm_difference, difference_power_table, shift_schedule
from .threads import thread_count
from .wavelet import WaveletSystem, wavelet_norm

__all__ = [
    "PLATEAU",
    "PartitionOfUnity",
    "CoeffSeq",
    "LocalizationParams",
    "Budget",
    "MSupResult",
    "build_pou",
    "pou_profile",
    "norm_of",
    "localized_norms",
    "besov_norm_unif",
    "besov_norm_localized",
    "MultiplierFunctional",
    "m_objective",
    "m_norm_sup",
    "profile_witness",
]

# psi == 1 on [-PLATEAU, PLATEAU]^d and supp psi = [-(1 - PLATEAU), 1 - PLATEAU]^d
PLATEAU = 0.25


def pou_profile(t, plateau=PLATEAU):
    """1-D profile: 1 on ``|t| <= plateau``, 0 on ``|t| >= 1 - plateau``, ``rho(t) + rho(t - 1) = 1``."""
    t = np.abs(np.asarray(t, dtype=np.float64))
    return smooth_step((1.0 - plateau - t) / (1.0 - 2.0 * plateau))


@dataclass(frozen=True, eq=False)
class PartitionOfUnity:
    """Base bump ``psi`` centred at the origin and its integer translates ``psi_mu``."""

    psi: SampledFunction
    plateau: float = PLATEAU

    @property
    def grid(self):
        return self.psi.grid

    @property
    def stride(self):
        return self.grid.stride

    def indices(self):
        """All translate indices ``mu`` in ``{0..W-1}^d`` (row-major)."""
        return list(itertools.product(range(self.grid.W), repeat=self.grid.d))

    def translate(self, mu):
        mu = tuple(np.atleast_1d(mu).astype(int))
        shift = [c * self.stride for c in mu]
        return np.roll(self.psi.values, shift, axis=tuple(range(self.grid.d)))

    def total(self):
        return sum(self.translate(mu) for mu in self.indices())


def build_pou(grid, plateau=PLATEAU):
    """Tensor-product partition of unity ``psi(x) = prod_i rho(x_i)`` on ``grid``."""
    if grid.r < 3:
        raise GridError(f"partition of unity needs r >= 3 (>= 8 samples per unit), got r={grid.r}")
    if grid.W < 2:
        raise GridError("partition of unity needs W >= 2")
    vals = np.ones(grid.shape)
    for delta in grid.periodic_coords(np.zeros(grid.d)):
        vals = vals * pou_profile(delta, plateau)
    return PartitionOfUnity(SampledFunction(grid, vals), plateau)


def norm_of(f, params, characterization="difference", ws=None):
    """Total norm of ``f`` in the named characterization."""
    if characterization == "difference":
        return besov_norm_difference(f, params).total
    if characterization == "fourier":
        return besov_norm_fourier(f, params).total
    if characterization == "wavelet":
        return wavelet_norm(f, params, ws).total
    raise ParameterError(f"unknown characterization {characterization!r}")


def _pool_map(fn, items):
    n = thread_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def localized_norms(f, params, characterization="difference", pou=None, ws=None):
    """Norms of ``psi_mu f`` for every translate, shaped ``(W,)*d``.

    Pieces that vanish identically get 0 without evaluation.
    """
    pou = build_pou(f.grid) if pou is None else pou
    if characterization == "difference":
        params.require_difference(f.grid.d)
    idx = pou.indices()

    def one(mu):
        piece = pou.translate(mu) * f.values
        if not np.any(piece):
            return 0.0
        return norm_of(SampledFunction(f.grid, piece), params, characterization, ws)

    vals = _pool_map(one, idx)
    return np.array(vals).reshape((f.grid.W,) * f.grid.d)


def besov_norm_unif(f, params, characterization="difference", pou=None, ws=None):
    """``max_mu ||psi_mu f||`` over integer translates (the continuous sup is replaced by the lattice max)."""
    return float(localized_norms(f, params, characterization, pou, ws).max())


@dataclass(frozen=True)
class LocalizationParams:
    params: object
    v: float

    def __post_init__(self):
        v = parse_exponent(self.v)
        if not v > 0:
            raise ParameterError(f"v must lie in (0, inf], got {v}", "requires 0 < v <= inf")
        object.__setattr__(self, "v", v)


def besov_norm_localized(f, lp, characterization="difference", pou=None, ws=None):
    """``(sum_mu ||psi_mu f||^v)^(1/v)``; ``v = inf`` is the uniform norm."""
    return lq_sum(localized_norms(f, lp.params, characterization, pou, ws).ravel(), lp.v)


@dataclass
class CoeffSeq:
    """Finitely supported sequence ``mu -> C_mu`` over translate indices."""

    entries: dict = field(default_factory=dict)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.float64)
        return cls({tuple(int(i) for i in np.atleast_1d(mu)): float(arr[mu])
                    for mu in zip(*np.nonzero(arr))})

    @classmethod
    def coordinate(cls, mu):
        return cls({tuple(np.atleast_1d(mu).astype(int).tolist()): 1.0})

    def to_array(self, grid):
        out = np.zeros((grid.W,) * grid.d)
        for mu, c in self.entries.items():
            out[tuple(int(i) % grid.W for i in mu)] += c
        return out

    def lp_norm(self, p):
        return lq_sum(list(self.entries.values()), parse_exponent(p))

    def scaled(self, lam):
        return CoeffSeq({mu: lam * c for mu, c in self.entries.items()})

    def is_sign_constant(self):
        vals = [c for c in self.entries.values() if c != 0]
        return all(c > 0 for c in vals) or all(c < 0 for c in vals)

    def to_json(self):
        return [{"mu": list(mu), "c": c} for mu, c in sorted(self.entries.items())]

    @classmethod
    def from_json(cls, items):
        return cls({tuple(int(i) for i in it["mu"]): float(it["c"]) for it in items})


class MultiplierFunctional:
    """Precomputed evaluator of the multiplier functional for a fixed ``f``.

    For each translate with a nonzero piece ``psi_mu f`` it stores the piece
    and the table ``||Delta_h^m(psi_mu f)||_p`` over the shift schedule, so an
    evaluation costs one weighted sum of pieces plus small reductions.
    """

    def __init__(self, f, params, pou=None):
        params.require_multiplier_order()
        self.f = f
        self.params = params
        self.grid = f.grid
        self.pou = build_pou(f.grid) if pou is None else pou
        self.schedule = shift_schedule(f.grid)
        idx = self.pou.indices()
        pieces = [self.pou.translate(mu) * f.values for mu in idx]
        self.active = [i for i, pc in enumerate(pieces) if np.any(pc)]
        self.indices = idx
        self.pieces = np.array([pieces[i].ravel() for i in self.active]).reshape(len(self.active), f.grid.size)

        def table(i):
            return difference_power_table(pieces[i], f.grid, params.m, params.p, self.schedule)

        tabs = _pool_map(table, self.active)
        # A[k] has shape (n_active, n_shifts_k)
        self.A = [np.array([t[k] for t in tabs]).reshape(len(self.active), len(self.schedule[k]))
                  for k in range(len(self.schedule))]
        self.weights = 2.0 ** (np.arange(len(self.schedule)) * params.s)

    def _dense(self, C):
        if isinstance(C, CoeffSeq):
            C = C.to_array(self.grid)
        C = np.asarray(C, dtype=np.float64).ravel()
        if C.size != len(self.indices):
            raise GridError(f"coefficient array has {C.size} entries, expected {len(self.indices)}")
        return C

    def terms(self, C):
        """``[||f sum C_mu psi_mu||_p, 2^ks S_k^(1/p) ...]`` whose ``l_q`` sum is the functional."""
        c = self._dense(C)[self.active]
        p = self.params.p
        head = lp_norm_array(c @ self.pieces, p, self.grid.cell) if c.size else 0.0
        out = [head]
        ac = np.abs(c)
        for k, A in enumerate(self.A):
            if c.size == 0:
                out.append(0.0)
            elif math.isinf(p):
                out.append(self.weights[k] * float(np.max(ac[:, None] * A)))
            else:
                S = float(np.max((ac**p) @ (A**p)))
                out.append(self.weights[k] * S ** (1.0 / p))
        return out

    def __call__(self, C):
        return lq_sum(self.terms(C), self.params.q)


def m_objective(f, params, C, functional=None):
    """Multiplier functional of ``f`` at the coefficient sequence ``C`` (before the sup)."""
    fn = MultiplierFunctional(f, params) if functional is None else functional
    return fn(C)


@dataclass(frozen=True)
class Budget:
    """Random candidate count and coordinate-ascent sweeps for :func:`m_norm_sup`."""

    n_random: int = 128
    sweeps: int = 4


@dataclass
class MSupResult:
    value: float
    witness: CoeffSeq
    diagnostics: dict


def _normalize(c, p):
    n = lq_sum(c, p)
    return c / n if n > 0 else c


def _block_candidates(grid):
    W, d = grid.W, grid.d
    L = 2
    while L <= W:
        for start in itertools.product(range(W), repeat=d):
            c = np.zeros((W,) * d)
            sl = np.ix_(*[[(s0 + i) % W for i in range(L)] for s0 in start])
            c[sl] = 1.0
            yield f"block{L}", c.ravel()
        L *= 2


def profile_witness(f_functional, g, p):
    """``C_mu proportional to ||phi_mu g||_inf``, ``phi_mu`` the 3^d neighbouring translates, normalized in ``l_p``."""
    pou = f_functional.pou
    grid = f_functional.grid
    out = []
    for mu in pou.indices():
        phi = np.zeros(grid.shape)
        for nb in itertools.product((-1, 0, 1), repeat=grid.d):
            phi += pou.translate(tuple(a + b for a, b in zip(mu, nb)))
        out.append(float(np.max(np.abs(phi * g.values))))
    return _normalize(np.array(out), p)


def m_norm_sup(f, params, budget=None, seed=0, witnesses=(), functional=None):
    """Lower bound on the multiplier norm by candidate search plus coordinate ascent.

    Candidates: every coordinate sequence, contiguous block-constant sequences,
    the witness recipe for each supplied ``g``, and ``budget.n_random`` random
    sign/sparsity patterns on the ``l_p`` sphere.  The ascent starts from the
    best structured (non-random) candidate, so the result is monotone in both
    budget components.
    """
    budget = Budget() if budget is None else budget
    fn = MultiplierFunctional(f, params) if functional is None else functional
    p = params.p
    n = len(fn.indices)

    structured = []
    for i in range(n):
        c = np.zeros(n)
        c[i] = 1.0
        structured.append(("coordinate", c))
    structured.extend((kind, _normalize(c, p)) for kind, c in _block_candidates(fn.grid))
    structured.extend(("witness", profile_witness(fn, g, p)) for g in witnesses)

    rng = np.random.Generator(np.random.PCG64(seed))
    randoms = []
    for _ in range(budget.n_random):
        density = rng.uniform(0.05, 1.0)
        mask = rng.random(n) < density
        if not mask.any():
            mask[rng.integers(n)] = True
        signs = rng.choice([-1.0, 1.0], size=n)
        randoms.append(("random", _normalize(mask * signs, p)))

    s_vals = _pool_map(fn, [c for _, c in structured])
    r_vals = _pool_map(fn, [c for _, c in randoms])
    i0 = int(np.argmax(s_vals))
    coord_best = float(max(s_vals[:n]))
    best_c, best_v = structured[i0][1].copy(), float(s_vals[i0])
    start_kind = structured[i0][0]

    # coordinate ascent on the active translates, renormalizing after each move
    step = 0.5
    evals = len(s_vals) + len(r_vals)
    active = [int(i) for i in fn.active]
    for _ in range(budget.sweeps):
        improved = False
        for i in active:
            scale = max(abs(best_c[i]), float(np.max(np.abs(best_c))))
            for delta in (step, -step):
                trial = best_c.copy()
                trial[i] += delta * scale
                trial = _normalize(trial, p)
                val = fn(trial)
                evals += 1
                if val > best_v * (1 + 1e-12):
                    best_c, best_v, improved = trial, val, True
        if not improved:
            step *= 0.5

    value, witness_c, source = best_v, best_c, "ascent"
    if r_vals and max(r_vals) > value:
        j = int(np.argmax(r_vals))
        value, witness_c, source = float(r_vals[j]), randoms[j][1], "random"

    witness = CoeffSeq({fn.indices[i]: float(witness_c[i]) for i in np.nonzero(witness_c)[0]})
    return MSupResult(
        value,
        witness,
        {
            "coordinate_max": coord_best,
            "start": start_kind,
            "source": source,
            "evaluations": evals,
            "sign_constant": witness.is_sign_constant(),
            "budget": {"n_random": budget.n_random, "sweeps": budget.sweeps},
            "seed": seed,
            "generator": f"numpy.PCG64/{np.__version__}",
            "note": "lower bound on the supremum; lattice translates only",
        },
    )
