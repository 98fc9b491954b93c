"""Characteristic roots, multiplier kernels and pointwise envelopes."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sigmalab.dispersion import (RootRegime, characteristic_roots,
                                 coalescence_radius, cutoff_chi, kernel_dt_values,
                                 kernel_hat, kernel_hat_dt,
                                 kernel_hat_oscillatory, kernel_values,
                                 large_freq_factor, pointwise_bound_check)
from sigmalab.params import ModelParams

P_SMALL = ModelParams.make(sigma=1, delta="1/4", mu=1)
P_SET1 = ModelParams.make(sigma=2, delta="9/10", mu=1)


class TestRoots:
    def test_vieta_sum_and_product(self):
        for params in (P_SMALL, P_SET1):
            sigma, delta, mu = params.sigma_f, params.delta_f, params.mu_f
            for rho in [1e-3, 0.1, 0.5, 1.0, 5.0, 50.0]:
                pair = characteristic_roots(rho, params)
                s = pair.lambda1 + pair.lambda2
                prod = pair.lambda1 * pair.lambda2
                assert abs(s + mu * rho ** (2 * delta)) <= 1e-10 * abs(s)
                assert abs(prod - rho ** (2 * sigma)) <= 1e-10 * abs(prod)

    def test_regime_switch_at_coalescence_radius(self):
        rho_star = coalescence_radius(P_SMALL)
        below = characteristic_roots(0.5 * rho_star, P_SMALL)
        above = characteristic_roots(2.0 * rho_star, P_SMALL)
        assert below.regime == RootRegime.real_distinct
        assert above.regime == RootRegime.complex_conjugate
        assert below.lambda1.imag == 0.0 and below.lambda2.imag == 0.0
        assert above.lambda1.imag != 0.0
        assert above.lambda1 == above.lambda2.conjugate()

    def test_coalescence_radius_value(self):
        # rho* = (mu^2/4)^{1/(2 sigma - 4 delta)} = 1/4 for sigma=1, delta=1/4
        assert coalescence_radius(P_SMALL) == pytest.approx(0.25, rel=1e-12)

    def test_roots_have_negative_real_part(self):
        for rho in [0.01, 0.25, 1.0, 10.0]:
            pair = characteristic_roots(rho, P_SET1)
            assert pair.lambda1.real < 0
            assert pair.lambda2.real < 0


class TestKernels:
    def test_initial_conditions(self):
        # K0(0) = 1, K1(0) = 0, dtK0(0) = 0, dtK1(0) = 1
        rho = np.array([0.03, 0.25, 1.7, 30.0])
        k0, k1 = kernel_values(1e-12, rho, P_SMALL)
        d0, d1 = kernel_dt_values(1e-12, rho, P_SMALL)
        np.testing.assert_allclose(k0, 1.0, atol=1e-8)
        np.testing.assert_allclose(k1, 0.0, atol=1e-8)
        np.testing.assert_allclose(d0, 0.0, atol=1e-6)
        np.testing.assert_allclose(d1, 1.0, atol=1e-8)

    def test_ode_residual_finite_differences(self):
        # ddot K + mu rho^{2 delta} dot K + rho^{2 sigma} K = 0
        h = 1e-4
        rho = np.linspace(0.05, 5.0, 23)
        mu_fac = P_SMALL.mu_f * rho ** (2 * P_SMALL.delta_f)
        stiff = rho ** (2 * P_SMALL.sigma_f)
        for t in [0.3, 1.1, 2.7]:
            vals = [kernel_values(t + k * h, rho, P_SMALL) for k in (-1, 0, 1)]
            for i in range(2):
                km, k, kp = vals[0][i], vals[1][i], vals[2][i]
                ddot = (kp - 2 * k + km) / h ** 2
                dot = (kp - km) / (2 * h)
                residual = np.abs(ddot + mu_fac * dot + stiff * k)
                assert residual.max() <= 1e-6

    def test_derivative_identities_against_finite_differences(self):
        h = 1e-6
        rho = np.array([0.1, 0.3, 2.0, 15.0])
        for t in [0.5, 3.0]:
            d0, d1 = kernel_dt_values(t, rho, P_SMALL)
            k0m, k1m = kernel_values(t - h, rho, P_SMALL)
            k0p, k1p = kernel_values(t + h, rho, P_SMALL)
            np.testing.assert_allclose(d0, (k0p - k0m) / (2 * h),
                                       rtol=1e-7, atol=1e-9)
            np.testing.assert_allclose(d1, (k1p - k1m) / (2 * h),
                                       rtol=1e-7, atol=1e-9)

    def test_scalar_and_array_paths_agree(self):
        rho = 1.3
        pair = kernel_hat(0.7, rho, P_SET1)
        k0, k1 = kernel_values(0.7, np.array([rho]), P_SET1)
        assert pair.k0 == pytest.approx(k0[0], rel=1e-14)
        assert pair.k1 == pytest.approx(k1[0], rel=1e-14)
        dpair = kernel_hat_dt(0.7, rho, P_SET1)
        d0, d1 = kernel_dt_values(0.7, np.array([rho]), P_SET1)
        assert dpair.k0 == pytest.approx(d0[0], rel=1e-14)
        assert dpair.k1 == pytest.approx(d1[0], rel=1e-14)

    def test_continuity_across_coalescence(self):
        # The stable evaluation must be smooth through the double-root
        # radius where the naive difference quotient degenerates.
        rho_star = coalescence_radius(P_SMALL)
        rho = np.linspace(0.9 * rho_star, 1.1 * rho_star, 2001)
        k0, k1 = kernel_values(1.0, rho, P_SMALL)
        for vals in (k0, k1):
            jumps = np.abs(np.diff(vals))
            assert jumps.max() <= 1e-3
            assert np.all(np.isfinite(vals))

    @settings(max_examples=60, deadline=None)
    @given(st.floats(1e-3, 50.0), st.floats(1e-3, 20.0))
    def test_kernels_real_and_bounded(self, rho, t):
        k0, k1 = kernel_values(t, np.array([rho]), P_SET1)
        assert np.isfinite(k0[0]) and np.isfinite(k1[0])
        assert abs(k0[0]) <= 1.0 + 1e-9
        # |K1| <= t always (integral of a bounded oscillation)
        assert abs(k1[0]) <= t * (1.0 + 1e-9)


class TestOscillatoryForm:
    def test_matches_general_evaluation_above_band(self):
        rho_star = coalescence_radius(P_SMALL)
        for rho in np.geomspace(2 * rho_star, 50.0, 15):
            envelope = np.exp(-0.5 * P_SMALL.mu_f * rho ** (2 * P_SMALL.delta_f)
                              * 0.1)
            for t in np.geomspace(0.1, 10.0, 8):
                general = kernel_hat(t, float(rho), P_SMALL)
                trig = kernel_hat_oscillatory(t, float(rho), P_SMALL)
                denom = abs(general.k0) + abs(general.k1) + envelope
                assert abs(general.k0 - trig.k0) <= 1e-10 * denom
                assert abs(general.k1 - trig.k1) <= 1e-10 * denom

    def test_factor_rejects_low_frequencies(self):
        with pytest.raises(ValueError):
            large_freq_factor(0.5 * coalescence_radius(P_SMALL), P_SMALL)

    def test_factor_approaches_one(self):
        assert large_freq_factor(1e6, P_SMALL) == pytest.approx(1.0, abs=1e-6)


class TestEnvelopes:
    def test_pointwise_bounds_hold_on_lattice(self):
        for t in [0.1, 1.0, 5.0, 20.0]:
            for rho in [0.05, 0.2, 1.0, 3.0, 20.0]:
                report = pointwise_bound_check(t, rho, P_SMALL)
                assert report.ratio_k0 <= 2.0
                assert report.ratio_k1 <= 2.0


class TestCutoff:
    def test_plateaus(self):
        rho = np.array([0.0, 0.3, 0.5, 1.0, 2.0])
        chi = cutoff_chi(rho)
        np.testing.assert_allclose(chi[:3], 1.0)
        np.testing.assert_allclose(chi[3:], 0.0)

    def test_monotone_transition(self):
        rho = np.linspace(0.5, 1.0, 400)
        chi = cutoff_chi(rho)
        assert np.all(np.diff(chi) <= 1e-12)
        assert np.all((chi >= 0.0) & (chi <= 1.0))

    def test_smooth_at_band_edges(self):
        # One-sided difference quotients vanish at both plateau joints.
        h = 1e-4
        for edge in (0.5, 1.0):
            inner = cutoff_chi(np.array([edge - h, edge + h]))
            slope = (inner[1] - inner[0]) / (2 * h)
            assert abs(slope) <= 1e-3
