"""Sampled periodic functions on dyadic lattices and their exact elementary operations.

The torus ``[0, W)^d`` with ``2**r`` samples per unit length per axis stands in
for ``R^d``.  Translations and differences by lattice vectors are exact
(they are index rolls), so the only discretization error anywhere in the
package is quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridError

__all__ = [
    "Grid",
    "SampledFunction",
    "Spectrum",
    "lp_norm",
    "lp_norm_array",
    "translate",
    "difference",
    "difference_array",
    "product",
    "forward_spectrum",
    "inverse_spectrum",
    "frequency_magnitude",
    "check_exponent",
]


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


def check_exponent(p, name="p"):
    """Validate an integrability-type exponent in ``(0, inf]`` and return it as float."""
    p = float(p)
    if not (p > 0):
        raise GridError(f"{name} must lie in (0, inf], got {p}")
    return p


@dataclass(frozen=True)
class Grid:
    """Periodic dyadic lattice of side ``W`` unit cells and resolution level ``r``."""

    d: int
    W: int
    r: int

    def __post_init__(self):
        if self.d not in (1, 2):
            raise GridError(f"unsupported dimension d={self.d}; only d in {{1, 2}}")
        if not _is_pow2(int(self.W)):
            raise GridError(f"W must be a positive power of two, got {self.W}")
        if self.r < 0:
            raise GridError(f"resolution level r must be >= 0, got {self.r}")

    @property
    def N(self):
        return self.W * 2**self.r

    @property
    def dx(self):
        return 2.0**-self.r

    @property
    def stride(self):
        """Samples per unit length."""
        return 2**self.r

    @property
    def shape(self):
        return (self.N,) * self.d

    @property
    def size(self):
        return self.N**self.d

    @property
    def volume(self):
        return float(self.W**self.d)

    @property
    def cell(self):
        """Quadrature weight ``dx**d``."""
        return self.dx**self.d

    def coords(self):
        """Sample coordinates, one array per axis (``indexing='ij'``)."""
        x = np.arange(self.N) * self.dx
        if self.d == 1:
            return (x,)
        return tuple(np.meshgrid(x, x, indexing="ij"))

    def periodic_coords(self, center):
        """Min-image displacement ``x - center`` per axis, in unit lengths."""
        out = []
        for xi, ci in zip(self.coords(), np.broadcast_to(center, (self.d,))):
            delta = xi - ci
            out.append(delta - self.W * np.round(delta / self.W))
        return tuple(out)

    def as_tuple(self):
        return (self.d, self.W, self.r)

    def __str__(self):
        return f"{self.d},{self.W},{self.r}"


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Real samples on a :class:`Grid`, stored with shape ``grid.shape``.

    The array is made read-only; arithmetic returns new instances.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.size != self.grid.size:
            raise GridError(
                f"expected {self.grid.size} samples for grid {self.grid}, got {v.size}"
            )
        v = v.reshape(self.grid.shape)
        if not np.all(np.isfinite(v)):
            raise GridError("samples must be finite (no NaN/Inf)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid, c):
        return cls(grid, np.full(grid.shape, float(c)))

    @classmethod
    def from_callable(cls, grid, fn):
        """Sample ``fn(*coords)`` on the grid (coordinates in ``[0, W)``)."""
        return cls(grid, np.broadcast_to(fn(*grid.coords()), grid.shape))

    def _coerce(self, other):
        if isinstance(other, SampledFunction):
            if other.grid != self.grid:
                raise GridError(f"grid mismatch: {self.grid} vs {other.grid}")
            return other.values
        return float(other)

    def __add__(self, other):
        return SampledFunction(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return SampledFunction(self.grid, self.values - self._coerce(other))

    def __mul__(self, other):
        return SampledFunction(self.grid, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return SampledFunction(self.grid, -self.values)

    def max_abs(self):
        return float(np.max(np.abs(self.values)))

    def is_zero(self):
        return not np.any(self.values)


def lp_norm_array(values, p, cell):
    """Riemann-sum ``L_p`` (quasi-)norm of an array with quadrature weight ``cell``."""
    a = np.abs(np.asarray(values, dtype=np.float64))
    if math.isinf(p):
        return float(a.max()) if a.size else 0.0
    if p == 1.0:
        return float(a.sum() * cell)
    if p == 2.0:
        return float(math.sqrt(np.dot(a.ravel(), a.ravel()) * cell))
    return float((np.sum(a**p) * cell) ** (1.0 / p))


def lp_norm(f, p):
    """``L_p`` (quasi-)norm of ``f`` for ``p`` in ``(0, inf]``.

    Finite ``p`` uses the Riemann sum ``(sum |f|**p * dx**d)**(1/p)``; ``p = inf``
    is the sample maximum.
    """
    p = check_exponent(p)
    return lp_norm_array(f.values, p, f.grid.cell)


def _as_shift(h, d):
    h = tuple(int(c) for c in np.atleast_1d(h))
    if len(h) != d:
        raise GridError(f"shift {h} has wrong dimension for d={d}")
    return h


def translate(f, h):
    """Return ``x -> f(x + h)`` for an integer lattice offset ``h`` (periodic)."""
    h = _as_shift(h, f.grid.d)
    return SampledFunction(f.grid, np.roll(f.values, [-c for c in h], axis=tuple(range(f.grid.d))))


def difference_array(values, h, m):
    """m-th forward difference of an array along lattice offset ``h`` (periodic wrap)."""
    axes = tuple(range(values.ndim))
    out = np.zeros_like(values, dtype=np.float64)
    for ell in range(m + 1):
        coef = (-1) ** (m - ell) * math.comb(m, ell)
        out += coef * np.roll(values, [-ell * c for c in h], axis=axes)
    return out


def difference(f, h, m):
    """``Delta_h^m f(x) = sum_l (-1)^(m-l) C(m,l) f(x + l h)`` with periodic shifts.

    ``h`` is an integer offset in samples per axis; the physical step is
    ``h * dx``.
    """
    if int(m) < 1:
        raise GridError(f"difference order must be >= 1, got {m}")
    h = _as_shift(h, f.grid.d)
    if any(abs(c) >= f.grid.N for c in h):
        raise GridError(f"shift components must lie in (-N, N), got {h}")
    return SampledFunction(f.grid, difference_array(f.values, h, int(m)))


def product(f, g):
    """Sample-wise product ``f * g``."""
    if f.grid != g.grid:
        raise GridError(f"grid mismatch: {f.grid} vs {g.grid}")
    return SampledFunction(f.grid, f.values * g.values)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Unnormalized DFT coefficients of a sampled function (``numpy.fft`` convention)."""

    grid: Grid
    coeffs: np.ndarray = field(repr=False)

    def energy(self):
        """``sum |F|^2 dx^d / N^d``, equal to ``||f||_2^2`` by Parseval."""
        return float(np.sum(np.abs(self.coeffs) ** 2) * self.grid.cell / self.grid.size)


def forward_spectrum(f):
    return Spectrum(f.grid, np.fft.fftn(f.values))


def inverse_spectrum(spectrum, grid=None):
    grid = spectrum.grid if grid is None else grid
    if spectrum.coeffs.shape != grid.shape:
        raise GridError(f"spectrum shape {spectrum.coeffs.shape} does not match grid {grid}")
    return SampledFunction(grid, np.fft.ifftn(spectrum.coeffs).real)


def frequency_axes(grid):
    """Angular frequencies per axis, ``(2 pi / W) * n`` folded to the Nyquist range."""
    xi = 2.0 * np.pi * np.fft.fftfreq(grid.N, d=grid.dx)
    if grid.d == 1:
        return (xi,)
    return tuple(np.meshgrid(xi, xi, indexing="ij"))


def frequency_magnitude(grid):
    """Euclidean norm of the min-image frequency vector at every spectral bin."""
    axes = frequency_axes(grid)
    return np.sqrt(sum(a**2 for a in axes))
