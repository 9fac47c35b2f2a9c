import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from besovlab import Grid, SampledFunction, SmoothnessParams, band_decompose, besov_norm_fourier, build_partition
from besovlab.bands import PeetreParams, default_decay, peetre_maximal, phi0
from besovlab.grid import difference_array, frequency_magnitude, lp_norm


def phi_k(k, xi):
    xi = np.abs(np.asarray(xi, dtype=float))
    return phi0(xi) if k == 0 else phi0(xi / 2**k) - phi0(xi / 2 ** (k - 1))


def test_phi0_profile():
    xi = np.linspace(0, 2, 2001)
    v = phi0(xi)
    assert np.all(v[xi <= 1] == 1) and np.all(v[xi >= 1.5] == 0)
    assert np.all(np.diff(v) <= 0)


@pytest.mark.parametrize("grid", [Grid(1, 64, 6), Grid(2, 8, 4)])
def test_partition_invariants(grid):
    part = build_partition(grid)
    mag = frequency_magnitude(grid)
    assert np.abs(part.multipliers.sum(axis=0) - 1).max() < 1e-12
    assert np.all(part.multipliers >= 0)
    assert part.multipliers[0][mag == 0].item() == 1
    assert np.all(part.multipliers[1:][:, mag == 0] == 0)
    for k in range(1, part.K_max + 1):
        live = part.multipliers[k] > 0
        assert mag[live].min() >= 2 ** (k - 1) - 1e-12
        assert mag[live].max() <= 3 * 2 ** (k - 1) + 1e-12


@pytest.mark.parametrize("k", range(0, 6))
def test_phi_k_vanishes_at_two_to_k_plus_one(k):
    assert phi_k(k, 2.0 ** (k + 1)) == 0


def test_pure_wave_activates_only_matching_bands():
    g = Grid(1, 64, 6)
    n = 64 * 4 // (2 * math.pi) * 0 + 41  # lattice frequency 2 pi n / W
    xi = 2 * math.pi * n / g.W
    x = g.coords()[0]
    f = SampledFunction(g, np.cos(xi * x))
    bands = band_decompose(f).bands
    active = [k for k, b in enumerate(bands) if np.abs(b.values).max() > 1e-12]
    expected = [k for k in range(len(bands)) if phi_k(k, xi) > 0]
    assert active == expected and 1 <= len(active) <= 2


def test_constant_is_band_zero(g1):
    f = SampledFunction.constant(g1, 2.5)
    bands = band_decompose(f).bands
    assert np.allclose(bands[0].values, 2.5, atol=1e-13)
    assert all(np.abs(b.values).max() < 1e-13 for b in bands[1:])


def test_reconstruction(g2, rng):
    f = SampledFunction(g2, rng.standard_normal(g2.shape))
    rec = band_decompose(f).reconstruct()
    assert np.abs(rec.values - f.values).max() < 1e-10 * np.abs(f.values).max()


def test_fourier_norm_zero(g1):
    assert besov_norm_fourier(SampledFunction.zeros(g1), SmoothnessParams(1.5, 2, 2)).total == 0


def test_fourier_norm_low_frequency_is_lp():
    g = Grid(1, 64, 5)
    x = g.coords()[0]
    f = SampledFunction(g, 1 + np.sin(2 * math.pi * 5 * x / g.W))  # |xi| < 1
    for p, q in [(2, 2), (1, 0.5), (math.inf, 1)]:
        P = SmoothnessParams(1.5, p, q)
        assert besov_norm_fourier(f, P).total == pytest.approx(lp_norm(f, p), rel=1e-12)


@pytest.mark.parametrize("n", [41, 64, 100])
def test_fourier_norm_pure_wave(n):
    g = Grid(1, 64, 6)
    xi = 2 * math.pi * n / g.W
    f = SampledFunction(g, np.cos(xi * g.coords()[0]))
    for s, p, q in [(1.5, 2, 2), (0.7, 1, 1), (1.2, math.inf, 3)]:
        P = SmoothnessParams(s, p, q)
        weights = [2 ** (k * s) * phi_k(k, xi) for k in range(12)]
        from besovlab.params import lq_sum

        expected = lq_sum(weights, q) * lp_norm(f, p)
        assert besov_norm_fourier(f, P).total == pytest.approx(expected, rel=1e-9)


def test_fourier_quasi_triangle_and_homogeneity(g1, rng):
    for s, p, q in [(1.5, 2, 2), (1.2, 0.5, 0.5), (1.0, 1, 0.7)]:
        P = SmoothnessParams(s, p, q)
        C = 2 ** max(1 / min(p, q, 1) - 1, 0)
        for _ in range(5):
            f = SampledFunction(g1, rng.standard_normal(g1.shape))
            h = SampledFunction(g1, rng.standard_normal(g1.shape))
            nf, nh = besov_norm_fourier(f, P).total, besov_norm_fourier(h, P).total
            assert besov_norm_fourier(f + h, P).total <= C * (nf + nh) * (1 + 1e-12)
            assert besov_norm_fourier(f * -3.0, P).total == pytest.approx(3 * nf, rel=1e-12)


@given(st.floats(0.2, 4), st.floats(0.2, 4))
@settings(max_examples=25, deadline=None)
def test_fourier_norm_monotone_in_q(q1, q2):
    g = Grid(1, 16, 5)
    f = SampledFunction(g, np.cos(np.arange(g.N) * 0.37) + np.sin(np.arange(g.N) * 1.9))
    lo, hi = sorted((q1, q2))
    P1, P2 = SmoothnessParams(1.0, 2, lo), SmoothnessParams(1.0, 2, hi)
    assert besov_norm_fourier(f, P2).total <= besov_norm_fourier(f, P1).total * (1 + 1e-12)


def test_peetre_constant_and_pointwise(g1, rng):
    f = SampledFunction.constant(g1, -2.0)
    assert np.allclose(peetre_maximal(f, PeetreParams(4.0, 2.0)).values, 2.0)
    h = SampledFunction(g1, rng.standard_normal(g1.shape))
    P = peetre_maximal(h, PeetreParams(2.0, 3.0))
    assert np.all(P.values >= np.abs(h.values)) and np.all(np.isfinite(P.values))


def test_peetre_matches_brute_force():
    g = Grid(1, 4, 4)
    f = np.random.default_rng(3).standard_normal(g.N)
    pp = PeetreParams(3.0, 2.0)
    fast = peetre_maximal(SampledFunction(g, f), pp).values
    n = np.fft.fftfreq(g.N, 1.0 / g.N)
    slow = np.array([
        max(abs(f[(i - int(z)) % g.N]) / (1 + (pp.b * abs(z) * g.dx) ** pp.a) for z in n) for i in range(g.N)
    ])
    assert np.allclose(fast, slow, rtol=0, atol=1e-15)


def _band_piece(grid, k, rng):
    part = build_partition(grid)
    return SampledFunction(grid, np.fft.ifft(np.fft.fft(rng.standard_normal(grid.N)) * part.multipliers[k]).real)


def test_peetre_bound_independent_of_scale(rng):
    g = Grid(1, 16, 7)
    consts = []
    for k in range(1, 7):
        consts.append(max(
            lp_norm(peetre_maximal(f, PeetreParams(2.0**k, 2.0)), 2) / lp_norm(f, 2)
            for f in (_band_piece(g, k, rng) for _ in range(3))
        ))
    assert max(consts) / min(consts) <= 1.2


def test_difference_bound_by_peetre_stable_in_scale(rng):
    g = Grid(1, 16, 7)
    a, m = 2.0, 2
    ratios = []
    for k in range(1, 7):
        best = 0.0
        for _ in range(3):
            f = _band_piece(g, k, rng)
            P = peetre_maximal(f, PeetreParams(2.0**k, a)).values
            for h in range(1, g.N // 2, 3):
                bh = 2.0**k * h * g.dx
                D = np.abs(difference_array(f.values, (h,), m))
                best = max(best, float((D / (max(1, bh**a) * min(1, bh**m) * P)).max()))
        ratios.append(best)
    assert max(ratios) / min(ratios) < 2


def test_default_decay():
    assert default_decay(1, 2) == 2 and default_decay(2, 0.5) == 8
