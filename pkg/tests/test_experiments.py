import math
import warnings

import numpy as np
import pytest

from besovlab import Grid, SampledFunction, SmoothnessParams, analyze, besov_norm_difference, besov_norm_wavelet
from besovlab.errors import BesovError, ParameterError, PlacementError
from besovlab.experiments import (
    algebra_ratio_suite,
    bump_train,
    equivalence_suite,
    fit_scaling_exponent,
    lacunary_wavelet_series,
    multiplier_norm_estimate,
    multiplier_pair,
    smooth_bump,
    standard_family,
)
from besovlab.experiments.generators import level_cells, place_wavelet, plateau_levels, train_spacing
from besovlab.experiments.suites import algebra_dilation_growth
from besovlab.grid import product
from besovlab.localization import norm_of
from besovlab.wavelet import WaveletSystem
from conftest import bump

P = SmoothnessParams(1.5, 2, 2)


def test_fit_exact_power_law():
    fit = fit_scaling_exponent([(n, 3 * n**1.5) for n in (2, 4, 8, 16, 32)])
    assert fit.exponent == pytest.approx(1.5, abs=1e-12) and abs(fit.r2 - 1) <= 1e-12


def test_fit_constant():
    fit = fit_scaling_exponent([(n, 7.0) for n in (1, 2, 3, 4)])
    assert fit.exponent == pytest.approx(0, abs=1e-12) and fit.r2 == 1


def test_fit_needs_four_positive_points():
    with pytest.raises(BesovError):
        fit_scaling_exponent([(1, 1), (2, 2), (3, 3)])
    with pytest.raises(BesovError):
        fit_scaling_exponent([(1, 1), (2, 2), (3, 0), (4, 4)])


def test_fit_bump_train_scaling():
    g = Grid(1, 256, 5)
    pts = [(n, besov_norm_difference(bump_train(g, [1.0] * n, train_spacing(g, n, 2)), P).total)
           for n in (5, 9, 17, 33, 65)]
    assert fit_scaling_exponent(pts).exponent == pytest.approx(0.5, abs=0.1)


def test_single_bump_train_is_single_bump():
    g = Grid(1, 16, 6)
    a = bump_train(g, [1.3], 8, start=5)
    b = SampledFunction(g, smooth_bump(g, (5.0,), 0.25, 1.3))
    assert np.array_equal(a.values, b.values)


def test_smooth_bump_shape(g2):
    v = smooth_bump(g2, (2.0, 2.0), 0.5, 3.0)
    assert v.max() == pytest.approx(3.0) and np.all(v >= 0)
    dist = np.hypot(*g2.periodic_coords((2.0, 2.0)))
    assert np.all(v[dist >= 0.5] == 0)


def test_train_overflow():
    with pytest.raises(PlacementError):
        train_spacing(Grid(1, 16, 5), 9, 2)
    with pytest.raises(PlacementError):
        bump_train(Grid(1, 16, 5), [1.0] * 5, 4)


def test_wavelet_placement_inside_plateau():
    g = Grid(1, 32, 11)
    ws = WaveletSystem()
    assert plateau_levels(g) == [5, 6, 7, 8, 9, 10]
    with pytest.raises(PlacementError):
        place_wavelet(g, ws, 2, 3)


def test_lacunary_single_level_norm():
    g = Grid(1, 32, 11)
    Q = SmoothnessParams(1.5, 2, 1)
    for j in plateau_levels(g):
        f = lacunary_wavelet_series(g, {j: 0.3}, {j: 7})
        expected = 0.3 * 2 ** (j * (1.5 + 0.5 - 0.5))
        assert besov_norm_wavelet(analyze(f), Q).total == pytest.approx(expected, rel=1e-10)


def test_multiplier_pair_identity_and_norm_scaling():
    g = Grid(1, 32, 11)
    levels = plateau_levels(g)
    pts = []
    for L in range(1, len(levels) + 1):
        f, h, spec = multiplier_pair(g, levels[:L], [1.0] * L, P)
        assert np.abs(product(f, h).values - f.values).max() < 1e-12 * f.max_abs()
        assert spec.kind == "multiplier_pair" and spec.levels == (levels[0], levels[L - 1])
        pts.append((L, besov_norm_difference(h, P).total))
    assert fit_scaling_exponent(pts).exponent == pytest.approx(0.5, abs=0.15)


def test_multiplier_pair_collision():
    g = Grid(1, 32, 11)
    with pytest.raises(PlacementError):
        multiplier_pair(g, range(5, 11), [1.0] * 6, P, spacing=8)


def test_level_cells():
    assert level_cells([5, 6, 7], 4) == {5: 2, 6: 6, 7: 10}


def test_standard_family_frozen():
    g = Grid(1, 64, 6)
    a, b = standard_family(g, 3), standard_family(g, 3)
    assert len(a) == 50
    kinds = [lab.split("-")[0] for lab, _ in a]
    assert kinds.count("bandlimited") == 20 and kinds.count("wavelets") == 20 and kinds.count("bumptrain") == 10
    assert all(np.array_equal(x.values, y.values) for (_, x), (_, y) in zip(a, b))
    assert not np.array_equal(a[0][1].values, standard_family(g, 4)[0][1].values)


def test_multiplier_estimate_examples(g1, rng):
    family = [bump(g1, (c,), r) for c, r in [(4.0, 0.5), (8.0, 1.0), (12.0, 2.0)]]
    one = multiplier_norm_estimate(SampledFunction.constant(g1, 1.0), P, family)
    assert one.value == pytest.approx(1.0, rel=1e-14)
    assert multiplier_norm_estimate(SampledFunction.zeros(g1), P, family).value == 0
    g0 = bump(g1, (8.0,), 1.0)
    est = multiplier_norm_estimate(g0, P, [g0])
    direct = besov_norm_difference(SampledFunction(g1, g0.values**2), P).total / besov_norm_difference(g0, P).total
    assert est.value == pytest.approx(direct, rel=1e-14) and est.witness == 0
    with pytest.raises(ValueError):
        multiplier_norm_estimate(g0, P, [])


def test_algebra_suite_examples(g1):
    plateau = SampledFunction(g1, smooth_bump(g1, (8.0,), 6.0))
    out = algebra_ratio_suite(P, [(plateau, bump(g1)), (bump(g1), bump(g1, radius=1.0))])
    assert np.isfinite(out["max_ratio"]) and out["witness"] in (0, 1)
    with pytest.raises(ParameterError, match="s > d/p"):
        algebra_ratio_suite(SmoothnessParams(0.3, 1, 1), [(plateau, plateau)])


def test_algebra_out_of_regime_growth():
    growth, _ = algebra_dilation_growth(SmoothnessParams(0.3, 1, 1), Grid(1, 8, 10))
    assert growth >= 4
    bounded, _ = algebra_dilation_growth(P, Grid(1, 8, 10))
    assert bounded < 1


def test_equivalence_excludes_zero():
    g = Grid(1, 16, 5)
    with pytest.warns(UserWarning, match="zero function"):
        table = equivalence_suite(P, [("zero", SampledFunction.zeros(g)), ("bump", bump(g))])
    assert table.excluded == ["zero"] and table.labels == ["bump"]
    lo, hi = table.interval("fourier", "difference")
    assert lo == hi and table.constant("fourier", "difference") >= 1


def test_equivalence_standard_family_first_triple():
    g = Grid(1, 64, 6)
    table = equivalence_suite(P, standard_family(g, 0))
    assert all(table.constant(a, b) <= 50 for a, b in table.ratios)


def test_dilation_family_common_slope():
    g = Grid(1, 16, 14)
    slopes = {}
    for char in ("fourier", "difference", "wavelet"):
        pts = [(2.0**j, norm_of(SampledFunction(g, smooth_bump(g, (8.0,), 2.0**-j)), P, char)) for j in range(2, 7)]
        slopes[char] = fit_scaling_exponent(pts).exponent
    vals = list(slopes.values())
    assert max(vals) - min(vals) <= 0.05, slopes
    assert all(abs(v - (1.5 - 0.5)) <= 0.05 for v in vals), slopes
