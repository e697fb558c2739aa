"""Top-level quadrature operators assembling solver output into values.

The two public rules are ``quad_alg`` and ``quad_log``; both take the node
count n and the asymptotic-order parameter s and dispatch on s: s = 0 runs
the derivative-free physical-space collocation, s >= 1 the frequency-space
Hermite path (the two coincide in value for linear oscillators).
``compute`` adds method selection on top, including the composite baseline
and the brute-force oracle.

The lower integration endpoint is handled analytically: every bracket term
of the antiderivative vanishes as x -> 0+ for alpha > -1, so only the
upper endpoint contributes.  This avoids evaluating g(x)^alpha at the
singular point.
"""

from __future__ import annotations

import numpy as np

from ._result import Method, QuadratureResult
from .errors import CapabilityError, ParameterError
from .filon import (
    FreqBasis,
    _alg_boundary_value,
    build_hermite_data,
    quad_filon,
    quad_freq,
)
from .levin import LevinSolution, solve_alg, solve_log
from .numkernel import kernel_h_log
from .problem import ProblemSpec, SingKind, make_f1_f2

__all__ = [
    "Method",
    "QuadratureResult",
    "quad_alg",
    "quad_log",
    "compute",
    "PHYSICAL_TSVD_THRESHOLD",
]

# The physical-space systems reach conditions near 1/threshold by n ~ 36;
# the tight drop tolerance keeps the convergence floor at round-off level
# instead of freezing it at the default least-squares regularization.
PHYSICAL_TSVD_THRESHOLD = 1e-13


def _physical_diagnostics(sol: LevinSolution) -> dict:
    return {
        "residual_norm": sol.residual_norm,
        "smallest_sv": sol.smallest_sv,
        "tsvd_truncated": sol.tsvd_truncated,
    }


def _alg_value_physical(spec: ProblemSpec, n: int):
    sol = solve_alg(spec, n, threshold=PHYSICAL_TSVD_THRESHOLD)
    q1_end = sol.q1_values[-1]
    return _alg_boundary_value(spec, sol.c0, complex(q1_end)), sol


def quad_alg(spec: ProblemSpec, n: int, s: int) -> QuadratureResult:
    """Quadrature for the algebraic kind.

    For s = 0 the physical-space solution (c0, q1) is assembled into

        [g(a)^{1+alpha} q1(a) + c0 (1 - e^{-iwg(a)}) g(a)^alpha + h(a)]
            e^{iwg(a)} phase_shift

    with the lower limit contributing zero.  For s >= 1 the call routes to
    the frequency-space path, which produces the same value for linear
    oscillators and the Hermite-enhanced asymptotic order in general.
    """
    if spec.kind is not SingKind.ALGEBRAIC:
        raise ParameterError("quad_alg requires an algebraic-kind problem")
    if s < 0:
        raise ParameterError("s must be nonnegative")
    if s >= 1:
        return quad_freq(spec, n, s)
    value, sol = _alg_value_physical(spec, n)
    return QuadratureResult(
        value=complex(value * spec.phase_shift),
        method=Method.LEVIN_PHYSICAL,
        s=0,
        n=n,
        diagnostics=_physical_diagnostics(sol),
    )


def quad_log(spec: ProblemSpec, n: int, s: int) -> QuadratureResult:
    """Quadrature for the algebraic-logarithmic kind.

    For s = 0 the coupled physical-space solves produce (c0, q1) and
    (d0, l1); the value adds the boundary bracket with the logarithmic
    kernel to the algebraic rule applied to the f2 amplitude.  For s >= 1
    the frequency-space path performs the analogous assembly.
    """
    if spec.kind is not SingKind.ALGEBRAIC_LOG:
        raise ParameterError("quad_log requires a logarithmic-kind problem")
    if s < 0:
        raise ParameterError("s must be nonnegative")
    if s >= 1:
        return quad_freq(spec, n, s)
    first, second = solve_log(spec, n, threshold=PHYSICAL_TSVD_THRESHOLD)
    f2 = make_f1_f2(spec)[1]
    sub = ProblemSpec(
        amplitude=f2,
        oscillator=spec.oscillator,
        a=spec.a,
        alpha=spec.alpha,
        kind=SingKind.ALGEBRAIC,
        w=spec.w,
        phase_shift=1.0 + 0.0j,
    )
    sub_value, sub_sol = _alg_value_physical(sub, n)
    g_a = spec.g_end()
    alpha = spec.alpha
    w = spec.w
    c0 = first.c0
    d0 = second.c0
    q1_end = complex(first.q1_values[-1])
    l1_end = complex(second.q1_values[-1])
    bracket = (
        (q1_end * np.log(g_a) + l1_end) * g_a ** (1.0 + alpha)
        + (c0 * np.log(g_a) + d0) * (1.0 - np.exp(-1j * w * g_a)) * g_a**alpha
        + kernel_h_log(c0, d0, alpha, w, g_a)
    )
    value = sub_value + bracket * np.exp(1j * w * g_a)
    diagnostics = _physical_diagnostics(first)
    diagnostics["residual_norm_second"] = second.residual_norm
    diagnostics["residual_norm_f2"] = sub_sol.residual_norm
    return QuadratureResult(
        value=complex(value * spec.phase_shift),
        method=Method.LEVIN_PHYSICAL,
        s=0,
        n=n,
        diagnostics=diagnostics,
    )


def _quad_levin(spec: ProblemSpec, n: int, s: int) -> QuadratureResult:
    if spec.kind is SingKind.ALGEBRAIC:
        return quad_alg(spec, n, s)
    return quad_log(spec, n, s)


def compute(spec: ProblemSpec, method: Method, n: int, s: int) -> QuadratureResult:
    """Evaluate the integral of ``spec`` with an explicitly chosen method.

    Parameters
    ----------
    spec : ProblemSpec
    method : Method
        LEVIN_PHYSICAL requires s = 0.  CMFP requires a linear oscillator
        (n is its number of geometric panels n1).  ORACLE requires
        |w| g(a) within the brute-force cap.
    n, s : int
        Node count / panel count and asymptotic-order parameter.

    Raises
    ------
    CapabilityError
        For (method, spec) pairs outside the supported scope.
    """
    if method is Method.LEVIN_PHYSICAL:
        if s != 0:
            raise CapabilityError(
                "the physical-space solver is derivative-free: s must be 0 "
                "(use the frequency path for s >= 1)"
            )
        return _quad_levin(spec, n, 0)
    if method is Method.LEVIN_FREQ:
        return quad_freq(spec, n, s)
    if method is Method.FILON:
        data = build_hermite_data(spec, n, s)
        return quad_filon(spec, data)
    if method is Method.CMFP:
        from .baselines import cmfp, default_cmfp_params

        return cmfp(spec, default_cmfp_params(spec, n))
    if method is Method.ORACLE:
        from .baselines import reference_oracle

        value = reference_oracle(spec)
        return QuadratureResult(
            value=value,
            method=Method.ORACLE,
            s=0,
            n=0,
            diagnostics={"ref_kind": "oracle"},
        )
    raise ParameterError(f"unknown method: {method!r}")


def quad_freq_powers(spec: ProblemSpec, n: int, s: int) -> QuadratureResult:
    """Frequency-space rule in the powers-of-g basis.

    In this representation the collocation solution and the Hermite Filon
    rule coincide exactly for linear oscillators; exposed for equivalence
    testing.
    """
    return quad_freq(spec, n, s, basis=FreqBasis.POWERS_OF_G)
