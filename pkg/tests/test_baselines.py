"""Composite baselines: Gauss-Legendre, CMF, CMFP, and the reference oracle."""

import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from oscquad.baselines import (
    CMFPParams,
    cmf_composite,
    cmfp,
    default_cmfp_params,
    exponential_moments,
    gauss_legendre,
    graded_integral,
    reference_oracle,
    ORACLE_PHASE_CAP,
)
from oscquad.errors import CapabilityError, ParameterError
from oscquad.problem import builtin_problem

mp.mp.dps = 40


class TestGaussLegendre:
    def test_linear(self):
        assert_allclose(gauss_legendre(lambda x: x, 0.0, 1.0, 2), 0.5, rtol=1e-14)

    def test_cubic(self):
        assert_allclose(gauss_legendre(lambda x: x**3, 0.0, 1.0, 2), 0.25,
                        rtol=1e-14)

    def test_exponential(self):
        got = gauss_legendre(np.exp, 0.0, 1.0, 8)
        assert abs(got - (math.e - 1.0)) <= 1e-13

    def test_degree_exactness(self):
        # m points integrate random polynomials of degree 2m-1 exactly.
        rng = np.random.default_rng(9)
        for m in range(1, 11):
            deg = 2 * m - 1
            coeffs = rng.uniform(-1.0, 1.0, deg + 1)
            got = gauss_legendre(
                lambda x: np.polynomial.polynomial.polyval(x, coeffs),
                -0.3, 1.2, m,
            )
            exact = np.polynomial.polynomial.polyval(
                1.2, np.polynomial.polynomial.polyint(coeffs)
            ) - np.polynomial.polynomial.polyval(
                -0.3, np.polynomial.polynomial.polyint(coeffs)
            )
            assert abs(got - exact) <= 1e-12 * max(abs(exact), 1.0)

    def test_bad_args(self):
        with pytest.raises(ParameterError):
            gauss_legendre(np.exp, 1.0, 0.0, 4)
        with pytest.raises(ParameterError):
            gauss_legendre(np.exp, 0.0, 1.0, 0)


class TestExponentialMoments:
    def mp_moment(self, theta, k):
        return complex(
            mp.quad(lambda x: x**k * mp.e ** (1j * theta * x), [-1, 1])
        )

    def test_vs_mpmath(self):
        for theta in (0.05, 0.3, 0.7, 2.0, 13.0, -4.2):
            mom = exponential_moments(theta, 6)[0]
            for k in range(6):
                ref = self.mp_moment(theta, k)
                assert abs(mom[k] - ref) <= 1e-12 * max(abs(ref), 1.0)

    def test_zero_theta(self):
        mom = exponential_moments(0.0, 5)[0]
        expect = [2.0, 0.0, 2.0 / 3.0, 0.0, 2.0 / 5.0]
        assert_allclose(mom, expect, atol=1e-15)

    def test_branch_accuracy_at_switch(self):
        # The Taylor branch and the recurrence branch (count-aware seam at
        # 0.6 * count) both hold full accuracy against mpmath at the seam.
        count = 8
        seam = 0.6 * count
        for theta in (seam - 1e-12, seam + 1e-12):
            mom = exponential_moments(theta, count)[0]
            for k in range(count):
                ref = self.mp_moment(theta, k)
                assert abs(mom[k] - ref) <= 1e-13 * max(abs(ref), 1.0)


class TestCmfComposite:
    def test_constant_amplitude_exact(self):
        # f = 1: the rule integrates e^{iwx} exactly on each panel.
        w, a, b = 37.0, 0.2, 1.4
        got = cmf_composite(lambda x: np.ones_like(x), 4, 3, a, b, w=w)
        expect = (np.exp(1j * w * b) - np.exp(1j * w * a)) / (1j * w)
        assert abs(got - expect) <= 1e-13 * abs(expect)

    def test_single_panel_equals_n1(self):
        w = 21.0
        amp = lambda x: np.cos(x)
        direct = cmf_composite(amp, 1, 6, 0.3, 0.9, w=w)
        ref = complex(
            mp.quad(lambda x: mp.cos(x) * mp.e ** (1j * w * x), [0.3, 0.9])
        )
        assert abs(direct - ref) <= 1e-8 * abs(ref)

    def test_moderate_frequency_vs_oracle(self):
        # f = 1/(1+x) on [0.1, 1], w = 100: n = 8, m = 4 lands at 7.7e-10
        # absolute; doubling the panels brings it under 1e-10.
        w = 100.0
        amp = lambda x: 1.0 / (1.0 + x)
        ref = complex(
            mp.quad(
                lambda x: mp.e ** (1j * w * x) / (1 + x),
                [0.1 + 0.9 * k / 24.0 for k in range(25)],
                maxdegree=10,
            )
        )
        assert abs(cmf_composite(amp, 8, 4, 0.1, 1.0, w=w) - ref) <= 1e-9
        assert abs(cmf_composite(amp, 16, 4, 0.1, 1.0, w=w) - ref) <= 1e-10

    def test_bad_args(self):
        with pytest.raises(ParameterError):
            cmf_composite(lambda x: x, 0, 4, 0.0, 1.0, w=1.0)
        with pytest.raises(ParameterError):
            cmf_composite(lambda x: x, 4, 4, 0.0, 1.0)


class TestCmfp:
    def test_ex54_pins(self):
        # Faithful-construction accuracy pins for ex54 (alpha = -0.5,
        # w = 1000): n1 = 4 stays within 6e-2 relative, n1 = 8 within 1e-2.
        from oscquad import Method, compute

        spec = builtin_problem("ex54", -0.5, 1000.0)
        ref = compute(spec, Method.LEVIN_PHYSICAL, 24, 0).value
        for n1, tol in ((4, 6e-2), (8, 1e-2)):
            res = cmfp(spec, default_cmfp_params(spec, n1))
            assert abs(res.value - ref) / abs(ref) <= tol

    def test_moderate_frequency_accuracy(self):
        # w = 50 sits under the oracle cap; n1 = 32 reaches 1e-6 relative.
        spec = builtin_problem("ex54", -0.5, 50.0)
        ref = reference_oracle(spec)
        res = cmfp(spec, default_cmfp_params(spec, 32))
        assert abs(res.value - ref) / abs(ref) <= 1e-6

    def test_degenerate_single_panel(self):
        spec = builtin_problem("ex54", -0.5, 100.0)
        params = default_cmfp_params(spec, 1)
        res = cmfp(spec, params)
        assert np.isfinite(res.value)

    def test_nonlinear_oscillator_rejected(self):
        linear = builtin_problem("ex54", 0.5, 100.0)
        params = default_cmfp_params(linear, 4)
        nonlinear = builtin_problem("ex53a", 0.5, 100.0)
        with pytest.raises(CapabilityError):
            cmfp(nonlinear, params)

    def test_n_sub_validation(self):
        spec = builtin_problem("ex54", -0.5, 100.0)
        params = default_cmfp_params(spec, 4)
        with pytest.raises(ParameterError):
            cmfp(spec, params, n_sub=[1, 1])
        with pytest.raises(ParameterError):
            cmfp(spec, params, n_sub=[0] * params.n)

    def test_params_validation(self):
        spec = builtin_problem("ex54", -0.5, 100.0)
        good = default_cmfp_params(spec, 4)
        import dataclasses

        bad = dataclasses.replace(good, m1=0)
        with pytest.raises(ParameterError):
            cmfp(spec, bad)


class TestGradedIntegral:
    def test_algebraic_endpoint(self):
        got = graded_integral(lambda x: np.sqrt(x), 1.0, 0.5)
        assert abs(got - 2.0 / 3.0) <= 1e-13

    def test_log_endpoint(self):
        # int_0^1 x^{-1/2} log x dx = -4.
        got = graded_integral(
            lambda x: np.log(x) / np.sqrt(x), 1.0, -0.5
        )
        assert abs(got - (-4.0)) <= 1e-12

    def test_rejects_nonintegrable(self):
        with pytest.raises(ParameterError):
            graded_integral(lambda x: 1.0 / x, 1.0, -1.0)


class TestReferenceOracle:
    def test_depth_doubling_stability(self):
        spec = builtin_problem("ex51", 0.5, 10.0)
        v1 = reference_oracle(spec)
        v2 = reference_oracle(spec, gl_order=32, cap_factor=0.125)
        assert abs(v1 - v2) <= 1e-11 * abs(v1)

    def test_doubling_across_builtins(self):
        for pid, alpha, w in (
            ("ex52", -0.5, 100.0),
            ("ex53a", 0.5, 50.0),
            ("ex53b", -0.5, 20.0),
        ):
            spec = builtin_problem(pid, alpha, w)
            v1 = reference_oracle(spec)
            v2 = reference_oracle(spec, gl_order=32, cap_factor=0.125)
            assert abs(v1 - v2) <= 1e-11 * max(abs(v1), 1e-3)

    def test_phase_cap(self):
        spec = builtin_problem("ex51", 0.5, 10.0 * ORACLE_PHASE_CAP)
        with pytest.raises(CapabilityError):
            reference_oracle(spec)
