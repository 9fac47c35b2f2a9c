"""Smooth dyadic decomposition of unity, band pieces, and the Fourier-analytic Besov norm."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridError, ParameterError
from .grid import SampledFunction, frequency_magnitude, lp_norm_array
from .params import NormBreakdown, SmoothnessParams, lq_sum

__all__ = [
    "smooth_step",
    "phi0",
    "DyadicPartition",
    "BandDecomposition",
    "PeetreParams",
    "build_partition",
    "band_decompose",
    "besov_norm_fourier",
    "peetre_maximal",
    "default_decay",
]


def _h(t):
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_step(t):
    """C-infinity step: 0 for ``t <= 0``, 1 for ``t >= 1``, ``H(t)/(H(t)+H(1-t))`` between."""
    t = np.asarray(t, dtype=np.float64)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    a, b = _h(t), _h(1.0 - t)
    out = a / (a + b)
    return float(out[0]) if scalar else out


def phi0(xi):
    """Generator of the dyadic partition: 1 on ``|xi| <= 1``, 0 on ``|xi| >= 3/2``."""
    return smooth_step(3.0 - 2.0 * np.abs(xi))


def phi_k(k, xi):
    """``phi_k(xi) = phi0(2^-k xi) - phi0(2^(1-k) xi)`` for ``k >= 1``; ``phi0`` for ``k = 0``."""
    xi = np.abs(np.asarray(xi, dtype=np.float64))
    if k == 0:
        return phi0(xi)
    return phi0(xi * 2.0**-k) - phi0(xi * 2.0 ** (1 - k))


@dataclass(frozen=True, eq=False)
class DyadicPartition:
    """Multipliers ``phi_0 .. phi_Kmax`` sampled on the spectral grid of ``grid``."""

    grid: object
    K_max: int
    multipliers: np.ndarray = field(repr=False)

    def __len__(self):
        return self.K_max + 1


@dataclass(frozen=True, eq=False)
class BandDecomposition:
    bands: list

    def reconstruct(self):
        total = sum(b.values for b in self.bands)
        return SampledFunction(self.bands[0].grid, total)


@functools.lru_cache(maxsize=16)
def build_partition(grid):
    """Sample the dyadic partition of unity on the spectral grid.

    ``K_max`` is the smallest ``k`` with ``2^k`` at least the largest
    frequency magnitude present, so ``sum_k phi_k = phi0(2^-K_max xi) = 1`` on
    every bin and all higher bands vanish identically on the grid.
    """
    mag = frequency_magnitude(grid)
    top = float(mag.max())
    K_max = max(0, math.ceil(math.log2(top))) if top > 1 else 0
    mult = np.stack([phi_k(k, mag) for k in range(K_max + 1)])
    mult.setflags(write=False)
    return DyadicPartition(grid, K_max, mult)


NOISE_FLOOR = 16 * np.finfo(np.float64).eps


def _spectral_bands(f, partition):
    if partition.grid != f.grid:
        raise GridError(f"partition built for {partition.grid}, function lives on {f.grid}")
    F = np.fft.fftn(f.values)
    # round-off floor: bins at FFT noise level would otherwise be amplified by p, q < 1
    F[np.abs(F) <= NOISE_FLOOR * np.abs(F).max()] = 0
    return [np.fft.ifftn(F * w).real for w in partition.multipliers]


def band_decompose(f, partition=None):
    """Split ``f`` into band pieces ``f_k = F^-1[phi_k F f]``."""
    partition = build_partition(f.grid) if partition is None else partition
    return BandDecomposition([SampledFunction(f.grid, b) for b in _spectral_bands(f, partition)])


def besov_norm_fourier(f, params, partition=None):
    """``(sum_k 2^(ksq) ||f_k||_p^q)^(1/q)`` over the bands present on the grid."""
    if not isinstance(params, SmoothnessParams):
        raise ParameterError("params must be SmoothnessParams")
    partition = build_partition(f.grid) if partition is None else partition
    cell = f.grid.cell
    terms = [
        2.0 ** (k * params.s) * lp_norm_array(b, params.p, cell)
        for k, b in enumerate(_spectral_bands(f, partition))
    ]
    return NormBreakdown(
        "fourier",
        params,
        lq_sum(terms, params.q),
        terms,
        metadata={"K_max": partition.K_max},
    )


@dataclass(frozen=True)
class PeetreParams:
    """Band radius ``b`` and decay exponent ``a`` of the Peetre maximal function."""

    b: float
    a: float

    def __post_init__(self):
        if not (self.b > 0 and self.a > 0):
            raise ParameterError(f"Peetre parameters need a > 0, b > 0; got a={self.a}, b={self.b}")


def default_decay(d, p):
    """``2d / min(p, 1)``; comfortably above the ``d/p`` threshold."""
    return 2.0 * d / min(p, 1.0)


def _offsets_by_radius(grid):
    n = np.fft.fftfreq(grid.N, d=1.0 / grid.N).astype(np.int64)  # min-image offsets
    if grid.d == 1:
        offs = n[:, None]
    else:
        a, b = np.meshgrid(n, n, indexing="ij")
        offs = np.stack([a.ravel(), b.ravel()], axis=1)
    rad = np.sqrt(np.sum(offs.astype(np.float64) ** 2, axis=1)) * grid.dx
    order = np.argsort(rad, kind="stable")
    return offs[order], rad[order]


def peetre_maximal(f, pp):
    """``P_{b,a} f(x) = sup_z |f(x - z)| / (1 + |b z|^a)`` over all lattice displacements.

    Displacements are visited by increasing min-image length; the scan stops
    once the weight exceeds ``max|f| / min(current)``, after which no term can
    raise the running maximum anywhere.
    """
    a = np.abs(f.values)
    top = a.max()
    out = a.copy()
    if top == 0:
        return SampledFunction(f.grid, out)
    axes = tuple(range(f.grid.d))
    offs, rad = _offsets_by_radius(f.grid)
    for z, length in zip(offs[1:], rad[1:]):
        w = 1.0 + (pp.b * length) ** pp.a
        low = out.min()
        if low > 0 and w > top / low:
            break
        np.maximum(out, np.roll(a, tuple(int(c) for c in z), axis=axes) / w, out=out)
    return SampledFunction(f.grid, out)
