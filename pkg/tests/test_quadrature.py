"""Top-level quadrature assembly and method dispatch."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from oscquad import Method, QuadratureResult, compute, quad_alg, quad_log
from oscquad.baselines import reference_oracle
from oscquad.cheb import barycentric_eval
from oscquad.errors import CapabilityError, ParameterError
from oscquad.levin import solve_alg
from oscquad.numkernel import kernel_h_alg
from oscquad.problem import (
    Amplitude,
    Oscillator,
    SingKind,
    build_problem,
    builtin_problem,
)
from oscquad.quadrature import quad_freq_powers


def zero_spec(kind):
    return build_problem(
        amplitude=Amplitude.from_poly([0.0]),
        oscillator=Oscillator.from_poly([0.0, 1.0]),
        a=1.0,
        alpha=0.5,
        kind=kind,
        w=90.0,
    )


class TestQuadAlg:
    def test_zero_amplitude(self):
        res = quad_alg(zero_spec(SingKind.ALGEBRAIC), 8, 0)
        assert res.value == 0.0

    def test_kind_mismatch(self):
        spec = builtin_problem("ex52", 0.5, 100.0)
        with pytest.raises(ParameterError):
            quad_alg(spec, 8, 0)

    def test_ex51_moderate_accuracy(self):
        spec = builtin_problem("ex51", 0.5, 100.0)
        ref = reference_oracle(spec)
        res = quad_alg(spec, 10, 0)
        assert abs(res.value - ref) <= 1e-7

    def test_algebraic_error_pin_physical(self):
        # ex53a, w=100, alpha=0.5, n=4, s=0: abs error 1.5382e-05 up to
        # node-placement-sensitive digits (factor-3 band).
        spec = builtin_problem("ex53a", 0.5, 100.0)
        ref = reference_oracle(spec)
        res = quad_alg(spec, 4, 0)
        err = abs(res.value - ref)
        assert 1.5382e-05 / 3.0 <= err <= 1.5382e-05 * 3.0

    def test_result_structure(self):
        res = quad_alg(builtin_problem("ex51", -0.5, 150.0), 10, 0)
        assert isinstance(res, QuadratureResult)
        assert res.method is Method.LEVIN_PHYSICAL
        assert res.n == 10 and res.s == 0
        assert "residual_norm" in res.diagnostics


class TestQuadLog:
    def test_zero_amplitude(self):
        res = quad_log(zero_spec(SingKind.ALGEBRAIC_LOG), 8, 0)
        assert res.value == 0.0

    def test_kind_mismatch(self):
        spec = builtin_problem("ex51", 0.5, 100.0)
        with pytest.raises(ParameterError):
            quad_log(spec, 8, 0)

    def test_ex52_vs_oracle(self):
        spec = builtin_problem("ex52", -0.5, 1000.0)
        ref = reference_oracle(spec)
        res = quad_log(spec, 16, 0)
        assert abs(res.value - ref) <= 1e-9 * abs(ref)

    def test_log_error_pin_physical(self):
        # ex53b, w=100, alpha=0.5, n=4, s=0: abs error 2.2974e-05 up to
        # node-placement-sensitive digits (factor-3 band).
        spec = builtin_problem("ex53b", 0.5, 100.0)
        ref = reference_oracle(spec)
        res = quad_log(spec, 4, 0)
        err = abs(res.value - ref)
        assert 2.2974e-05 / 3.0 <= err <= 2.2974e-05 * 3.0


class TestBracketLowerLimit:
    def test_bracket_vanishes_at_origin(self):
        # Each term of the antiderivative bracket decays monotonically as
        # x -> 0+, justifying the analytic zero at the lower limit.
        spec = builtin_problem("ex51", -0.5, 300.0)
        sol = solve_alg(spec, 14)
        alpha, w = spec.alpha, spec.w
        c0 = sol.c0
        full = np.concatenate(([sol.grid.origin_weights @ sol.q1_values],
                               sol.q1_values))
        mags = []
        for k in range(4, 9):
            x = 10.0 ** (-k)
            g = float(spec.oscillator.value(x))
            q1 = barycentric_eval(sol.grid, full, x)
            bracket = (
                g ** (alpha + 1.0) * q1
                + c0 * (1.0 - np.exp(-1j * w * g)) * g**alpha
                + kernel_h_alg(c0, alpha, w, g)
            )
            mags.append(abs(bracket))
        for prev, cur in zip(mags, mags[1:]):
            assert cur < prev


class TestCompute:
    def test_physical_rejects_hermite_order(self):
        spec = builtin_problem("ex51", 0.5, 100.0)
        with pytest.raises(CapabilityError):
            compute(spec, Method.LEVIN_PHYSICAL, 8, 1)

    def test_cmfp_rejects_nonlinear_g(self):
        spec = builtin_problem("ex53a", 0.5, 100.0)
        with pytest.raises(CapabilityError):
            compute(spec, Method.CMFP, 4, 0)

    def test_oracle_dispatch(self):
        spec = builtin_problem("ex51", 0.5, 10.0)
        res = compute(spec, Method.ORACLE, 0, 0)
        assert res.method is Method.ORACLE
        assert np.isfinite(res.value)
        assert res.diagnostics["ref_kind"] == "oracle"

    def test_oracle_rejects_high_frequency(self):
        spec = builtin_problem("ex51", 0.5, 1e6)
        with pytest.raises(CapabilityError):
            compute(spec, Method.ORACLE, 0, 0)

    def test_methods_agree(self):
        # Physical and frequency paths agree at s=0 for linear g.
        for w in (100.0, 1000.0):
            spec = builtin_problem("ex51", 0.5, w)
            a = compute(spec, Method.LEVIN_PHYSICAL, 12, 0)
            b = compute(spec, Method.LEVIN_FREQ, 12, 0)
            assert abs(a.value - b.value) <= 1e-9 * max(abs(a.value), 1e-30)


class TestQuadFreqPowers:
    def test_matches_chebyshev_route(self):
        spec = builtin_problem("ex51", 0.5, 400.0)
        a = compute(spec, Method.LEVIN_FREQ, 8, 1)
        b = quad_freq_powers(spec, 8, 1)
        assert abs(a.value - b.value) <= 1e-10 * max(abs(a.value), 1e-30)


class TestConvergenceInN:
    def test_superalgebraic_decay(self):
        spec = builtin_problem("ex51", -0.5, 1000.0)
        ref = reference_oracle(spec)
        errs = []
        for n in (4, 8, 12, 16, 20):
            res = quad_alg(spec, n, 0)
            errs.append(max(abs(res.value - ref), 1e-18))
        assert errs[2] <= 1e-2 * errs[0]
        assert errs[-1] <= 1e-12
