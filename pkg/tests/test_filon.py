"""Frequency-space Hermite collocation, moments, and Filon quadrature."""

import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from oscquad.errors import CapabilityError
from oscquad.filon import (
    FreqBasis,
    build_hermite_data,
    build_moment_table,
    hermite_solve,
    moments_mu,
    moments_nu,
    quad_filon,
    quad_freq,
    solve_freq,
)
from oscquad.problem import (
    Amplitude,
    Oscillator,
    SingKind,
    build_problem,
    builtin_problem,
)
from oscquad.baselines import reference_oracle

mp.mp.dps = 40


def mp_moment(alpha, w, g_a, j, log=False):
    """Oracle: int_0^{g_a} u^{j-1+alpha} (log u)? e^{iwu} du."""
    expo = mp.mpf(j - 1 + alpha)
    if log:
        fn = lambda u: u**expo * mp.log(u) * mp.e ** (1j * w * u)
    else:
        fn = lambda u: u**expo * mp.e ** (1j * w * u)
    return complex(mp.quad(fn, [0, mp.mpf(g_a)]))


class TestMomentsMu:
    def test_alpha_zero_limit(self):
        # Outside the enforced problem range but fine for raw moments:
        # mu_1 reduces to the plain exponential moment.
        w, g_a = 7.0, 1.0
        mu = moments_mu(0.0, w, g_a, 1)
        expect = (np.exp(1j * w * g_a) - 1.0) / (1j * w)
        assert_allclose(mu[0], expect, rtol=1e-13)

    def test_mu1_vs_oracle(self):
        mu = moments_mu(0.5, 20.0, 1.0, 1)
        ref = mp_moment(0.5, 20.0, 1.0, 1)
        assert abs(mu[0] - ref) <= 1e-11 * abs(ref)

    def test_mu3_recurrence_vs_oracle(self):
        mu = moments_mu(0.5, 20.0, 1.0, 3)
        ref = mp_moment(0.5, 20.0, 1.0, 3)
        assert abs(mu[2] - ref) <= 1e-10 * max(abs(ref), 1.0)

    def test_negative_alpha_and_w(self):
        mu = moments_mu(-0.5, -35.0, 0.8, 2)
        for j in (1, 2):
            ref = mp_moment(-0.5, -35.0, 0.8, j)
            assert abs(mu[j - 1] - ref) <= 1e-10 * max(abs(ref), 1.0)

    def test_recurrence_residual_invariant(self):
        alpha, w, g_a = 0.5, 40.0, 1.3
        mu = moments_mu(alpha, w, g_a, 6)
        phase = np.exp(1j * w * g_a)
        for j in range(1, 6):
            resid = (
                mu[j]
                + ((j + alpha) / (1j * w)) * mu[j - 1]
                - g_a ** (j + alpha) * phase / (1j * w)
            )
            assert abs(resid) <= 1e-12 * abs(mu[j])


class TestMomentsNu:
    def test_nu1_vs_oracle(self):
        mu = moments_mu(0.5, 20.0, 1.0, 1)
        nu = moments_nu(0.5, 20.0, 1.0, mu)
        ref = mp_moment(0.5, 20.0, 1.0, 1, log=True)
        assert abs(nu[0] - ref) <= 1e-9 * max(abs(ref), 1.0)

    def test_validate_flag_accepts_good_formula(self):
        mu = moments_mu(-0.5, 15.0, 1.0, 2)
        nu = moments_nu(-0.5, 15.0, 1.0, mu, validate=True)
        ref = mp_moment(-0.5, 15.0, 1.0, 1, log=True)
        assert abs(nu[0] - ref) <= 1e-9 * max(abs(ref), 1.0)

    def test_nu2_recurrence_residual(self):
        alpha, w, g_a = 0.5, 25.0, 1.0
        mu = moments_mu(alpha, w, g_a, 3)
        nu = moments_nu(alpha, w, g_a, mu)
        phase = np.exp(1j * w * g_a)
        for j in (1, 2):
            resid = (
                nu[j]
                + ((j + alpha) / (1j * w)) * nu[j - 1]
                + mu[j - 1] / (1j * w)
                - g_a ** (j + alpha) * math.log(g_a) * phase / (1j * w)
            )
            assert abs(resid) <= 1e-12 * max(abs(nu[j]), abs(mu[j - 1]))

    def test_nu2_vs_oracle(self):
        mu = moments_mu(0.5, 25.0, 1.0, 2)
        nu = moments_nu(0.5, 25.0, 1.0, mu)
        ref = mp_moment(0.5, 25.0, 1.0, 2, log=True)
        assert abs(nu[1] - ref) <= 1e-10 * max(abs(ref), 1.0)


class TestBuildMomentTable:
    def test_table_matches_raw_calls(self):
        spec = builtin_problem("ex52", 0.5, 30.0)
        table = build_moment_table(spec, 4)
        mu = moments_mu(0.5, spec.w, spec.g_end(), 4)
        assert_allclose(table.mu, mu, rtol=1e-14)
        assert table.nu is not None

    def test_algebraic_table_has_no_nu(self):
        spec = builtin_problem("ex51", 0.5, 30.0)
        table = build_moment_table(spec, 4)
        assert table.nu is None


class TestHermiteSolve:
    def test_span_member_recovered(self):
        # f1 = g'(2 + 3g) with g = x^2 + x expands to the polynomial
        # 2 + 7x + 9x^2 + 6x^3, a member of span{g', g'g}: coefficients
        # come back as (2, 3, 0, ...).
        spec = build_problem(
            amplitude=Amplitude.from_poly([1.0]),
            oscillator=Oscillator.from_poly([0.0, 1.0, 1.0]),
            a=1.0,
            alpha=0.5,
            kind=SingKind.ALGEBRAIC,
            w=40.0,
        )
        amp = Amplitude.from_poly([2.0, 7.0, 9.0, 6.0])
        data = build_hermite_data(spec, 4, 1, amplitude=amp)
        coeffs = hermite_solve(data, spec)
        expect = np.zeros(coeffs.size)
        expect[0], expect[1] = 2.0, 3.0
        assert_allclose(coeffs, expect, atol=1e-9)

    def test_interpolation_conditions(self):
        # ex53a, n=4, s=1: values and first derivatives at the endpoints.
        spec = builtin_problem("ex53a", 0.5, 100.0)
        data = build_hermite_data(spec, 4, 1)
        coeffs = hermite_solve(data, spec)
        g_a = spec.g_end()
        osc = spec.oscillator

        def interp(x):
            g = osc.value(x)
            gp = osc.deriv1(x)
            return gp * sum(c * g**k for k, c in enumerate(coeffs))

        for x, m, vals in zip(data.nodes, data.mults, data.values):
            assert abs(interp(float(x)) - vals[0]) <= 1e-9 * max(
                abs(vals[0]), 1.0
            )
            if m > 1:
                h = 1e-6 * max(float(x), 0.01)
                lo = max(float(x) - h, 0.0)
                fd = (interp(float(x) + h) - interp(lo)) / (float(x) + h - lo)
                assert abs(fd - vals[1]) <= 1e-4 * max(abs(vals[1]), 1.0)

    def test_basis_cap(self):
        spec = builtin_problem("ex51", 0.5, 100.0)
        data = build_hermite_data(spec, 45, 0)
        with pytest.raises(CapabilityError):
            hermite_solve(data, spec)


class TestQuadFilon:
    def test_zero_amplitude(self):
        spec = build_problem(
            amplitude=Amplitude.from_poly([0.0]),
            oscillator=Oscillator.from_poly([0.0, 1.0]),
            a=1.0,
            alpha=0.5,
            kind=SingKind.ALGEBRAIC,
            w=60.0,
        )
        data = build_hermite_data(spec, 5, 1)
        res = quad_filon(spec, data)
        assert res.value == 0.0

    def test_span_exactness(self):
        # g = x, f = 2 + 3x: the value is exactly 2 mu_1 + 3 mu_2.
        spec = build_problem(
            amplitude=Amplitude.from_poly([2.0, 3.0]),
            oscillator=Oscillator.from_poly([0.0, 1.0]),
            a=1.0,
            alpha=0.5,
            kind=SingKind.ALGEBRAIC,
            w=75.0,
        )
        data = build_hermite_data(spec, 4, 0)
        res = quad_filon(spec, data)
        mu = moments_mu(0.5, spec.w, 1.0, 2)
        expect = 2.0 * mu[0] + 3.0 * mu[1]
        assert abs(res.value - expect) <= 1e-10 * abs(expect)

    def test_algebraic_error_pin(self):
        # ex53a, w=100, alpha=0.5, n=4, s=0: abs error 4.3048e-05.
        spec = builtin_problem("ex53a", 0.5, 100.0)
        ref = reference_oracle(spec)
        data = build_hermite_data(spec, 4, 0)
        err = abs(quad_filon(spec, data).value - ref)
        assert 0.9 * 4.3048e-05 <= err <= 1.1 * 4.3048e-05

    def test_log_error_pin(self):
        # ex53b, w=100, alpha=0.5, n=6, s=2: abs error ~1.3454e-07.
        spec = builtin_problem("ex53b", 0.5, 100.0)
        ref = reference_oracle(spec)
        data = build_hermite_data(spec, 6, 2)
        err = abs(quad_filon(spec, data).value - ref)
        assert 0.8 * 1.3454e-07 <= err <= 1.25 * 1.3454e-07


class TestSolveFreq:
    def test_returns_finite_solution(self):
        spec = builtin_problem("ex51", 0.5, 200.0)
        c0, coeffs, diag = solve_freq(spec, 8, 1)
        assert np.isfinite(c0)
        assert np.isfinite(coeffs).all()
        assert diag.smallest_sv > 0.0

    def test_quadrature_matches_oracle(self):
        spec = builtin_problem("ex51", 0.5, 200.0)
        ref = reference_oracle(spec)
        got = quad_freq(spec, 10, 1).value
        assert abs(got - ref) <= 1e-10 * abs(ref)

    def test_power_basis_matches_chebyshev(self):
        spec = builtin_problem("ex51", -0.5, 150.0)
        a = quad_freq(spec, 6, 1, basis=FreqBasis.CHEBYSHEV)
        b = quad_freq(spec, 6, 1, basis=FreqBasis.POWERS_OF_G)
        assert abs(a.value - b.value) <= 1e-10 * max(abs(a.value), 1e-30)

    def test_filon_levin_equivalence(self):
        # Linear g, multiplicities all 1: the Filon value and the
        # frequency-space Levin value coincide to round-off.
        for pid, alpha in (("ex51", 0.5), ("ex52", -0.5)):
            spec = builtin_problem(pid, alpha, 300.0)
            data = build_hermite_data(spec, 7, 0)
            qf = quad_filon(spec, data)
            ql = quad_freq(spec, 7, 0, basis=FreqBasis.POWERS_OF_G)
            assert abs(qf.value - ql.value) <= 1e-11 * (1.0 + abs(ql.value))
