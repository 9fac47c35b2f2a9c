import numpy as np
import pytest

from besovlab import Grid, SampledFunction, SmoothnessParams, WaveletCoeffs, WaveletSystem, analyze, besov_norm_wavelet, synthesize
from besovlab.errors import GridError, ParameterError
from besovlab.experiments.fitting import fit_scaling_exponent
from besovlab.grid import lp_norm
from besovlab.wavelet import basis_function

GRIDS = [Grid(1, 16, 6), Grid(2, 8, 3)]


def test_filters_orthonormal():
    lo, hi = WaveletSystem().filters
    assert abs(lo @ lo - 1) < 1e-12 and abs(hi @ hi - 1) < 1e-12 and abs(lo @ hi) < 1e-12
    for k in range(1, len(lo) // 2):
        assert abs(lo[2 * k:] @ lo[: -2 * k]) < 1e-12


def test_system_metadata():
    ws = WaveletSystem()
    assert ws.name == "db8" and ws.s_max == 2.5 and ws.T == 7.5
    with pytest.raises(ParameterError):
        WaveletSystem(40)


@pytest.mark.parametrize("grid", GRIDS)
def test_zero_and_round_trip(grid, rng):
    z = analyze(SampledFunction.zeros(grid))
    assert z.energy() == 0
    f = SampledFunction(grid, rng.standard_normal(grid.shape))
    c = analyze(f)
    assert c.count() == grid.size
    assert np.abs(synthesize(c).values - f.values).max() < 1e-10
    assert c.energy() == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-10)


@pytest.mark.parametrize("grid", GRIDS)
def test_linearity(grid, rng):
    f = SampledFunction(grid, rng.standard_normal(grid.shape))
    h = SampledFunction(grid, rng.standard_normal(grid.shape))
    a, b, ab = analyze(f), analyze(h), analyze(f * 2.0 + h)
    ref = a.scaled(2.0) + b
    assert np.allclose(ab.scaling, ref.scaling, atol=1e-12)
    assert all(np.allclose(x, y, atol=1e-12) for x, y in zip(ab.details, ref.details))


@pytest.mark.parametrize("grid", GRIDS)
def test_basis_function_has_single_coefficient(grid):
    j = grid.r - 2
    f = basis_function(grid, j, (3,) * grid.d if grid.d == 2 else 3)
    c = analyze(f)
    blk = c.details[j] if grid.d == 1 else c.details[j][0]
    idx = (3,) if grid.d == 1 else (3, 3)
    assert abs(blk[idx] - 1) < 1e-10
    blk = blk.copy()
    blk[idx] = 0
    rest = [np.abs(b).max() for n, b in enumerate(c.details) if n != j] + [np.abs(blk).max(), np.abs(c.scaling).max()]
    assert max(rest) < 1e-10


def test_depth_errors():
    g = Grid(1, 16, 4)
    with pytest.raises(GridError):
        analyze(SampledFunction.zeros(g), levels=7)
    c = WaveletCoeffs.zeros(g)
    with pytest.raises(GridError):
        synthesize(WaveletCoeffs(g, c.scaling, c.details[:-1]))


def test_norm_of_zero():
    g = GRIDS[0]
    assert besov_norm_wavelet(WaveletCoeffs.zeros(g), SmoothnessParams(1.5, 2, 2)).total == 0


@pytest.mark.parametrize("grid", GRIDS)
@pytest.mark.parametrize("s,p,q", [(1.5, 2, 2), (1.2, 0.5, 0.5), (0.7, 1, np.inf)])
def test_single_coefficient_norm_exact(grid, s, p, q):
    d = grid.d
    P = SmoothnessParams(s, p, q)
    for j in range(grid.r):
        c = WaveletCoeffs.zeros(grid)
        if d == 1:
            c.details[j][1] = 1.0
        else:
            c.details[j][1, 0, 1] = 1.0
        assert besov_norm_wavelet(c, P).total == pytest.approx(2 ** (j * (s + d / 2 - d / p)), rel=1e-14)


def test_single_coefficient_norm_after_synthesis():
    g = Grid(1, 16, 6)
    P = SmoothnessParams(1.2, 0.5, 0.5)
    for j in range(g.r):
        assert besov_norm_wavelet(analyze(basis_function(g, j, 5)), P).total == pytest.approx(
            2 ** (j * (1.2 + 0.5 - 2)), rel=1e-12)


@pytest.mark.parametrize("q", [1.0, 2.0, 0.5])
def test_lacunary_series_norm_is_exact_sum(q):
    g = Grid(1, 32, 6)
    P = SmoothnessParams(1.5, 2, q)
    c = WaveletCoeffs.zeros(g)
    alphas = {1: 0.7, 3: -0.2, 4: 0.05, 5: 0.01}
    for j, a in alphas.items():
        c.details[j][(5 * j * 2**j) % c.details[j].size] = a
    expo = 1.5 + 0.5 - 0.5
    expected = sum((2 ** (j * expo) * abs(a)) ** q for j, a in alphas.items()) ** (1 / q)
    assert besov_norm_wavelet(c, P).total == pytest.approx(expected, rel=1e-13)


def test_smoothness_above_certified_range():
    with pytest.raises(ParameterError, match="certified"):
        besov_norm_wavelet(WaveletCoeffs.zeros(GRIDS[0]), SmoothnessParams(2.6, 2, 2))


@pytest.mark.parametrize("s,p", [(1.5, 2), (1.2, 1), (1.2, 0.5)])
def test_dilation_slope(s, p):
    g = Grid(1, 16, 8)
    P = SmoothnessParams(s, p, 2)
    pts = [(2.0**j, besov_norm_wavelet(analyze(basis_function(g, j, 3)), P).total) for j in range(2, g.r - 1)]
    assert abs(fit_scaling_exponent(pts).exponent - (s + 0.5 - 1 / p)) <= 0.05
