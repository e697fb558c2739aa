"""Comparison methods and the brute-force reference oracle.

The composite moment-free Filon-type quadrature (CMFP) is implemented for
linear oscillators and a singular endpoint of order r = 0, the exact
configuration used by the benchmark comparison.  It combines a graded
Gauss-Legendre part near the singularity with a composite moment-free
Filon part on a geometric mesh reaching the outer endpoint.

The reference oracle integrates the full singular integrand by brute
force on a geometric mesh (ratio 1/2) with oscillation-capped
Gauss-Legendre panels; it refuses frequencies whose total phase range
exceeds a cap, beyond which its cost and round-off defeat its purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from ._result import Method, QuadratureResult
from .errors import CapabilityError, ParameterError
from .problem import ProblemSpec, SingKind, integrand

__all__ = [
    "CMFPParams",
    "default_cmfp_params",
    "gauss_legendre",
    "exponential_moments",
    "cmf_composite",
    "cmfp",
    "graded_integral",
    "reference_oracle",
    "ORACLE_PHASE_CAP",
]

ORACLE_PHASE_CAP = 2.0e4


def gauss_legendre(f, a: float, b: float, m: int) -> complex:
    """m-point Gauss-Legendre value of ``int_a^b f``.

    Exact for polynomials of degree <= 2m - 1.
    """
    if m < 1:
        raise ParameterError("m must be at least 1")
    if not a < b:
        raise ParameterError("need a < b")
    xg, wg = roots_legendre(m)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = np.asarray(f(mid + half * xg), dtype=complex)
    return complex(half * np.dot(wg, vals))


def exponential_moments(theta, count: int) -> np.ndarray:
    """Moments ``m_k = int_{-1}^{1} xi^k e^{i theta xi} d xi``, k < count.

    Vectorized over ``theta``.  The forward recurrence amplifies round-off
    by roughly k/|theta| per step, so it is used only where |theta|
    dominates the highest index; below that a Taylor series with an
    adaptive term count takes over.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if count < 1:
        raise ParameterError("count must be at least 1")
    out = np.empty((theta.size, count), dtype=complex)
    switch = max(0.5, 0.6 * count)
    big = np.abs(theta) >= switch
    if big.any():
        t = theta[big]
        it = 1j * t
        ep = np.exp(it)
        em = np.exp(-it)
        mk = (ep - em) / it
        out[big, 0] = mk
        for k in range(1, count):
            sign = -1.0 if k % 2 else 1.0
            mk = (ep - sign * em) / it - (k / it) * mk
            out[big, k] = mk
    small = ~big
    if small.any():
        ts = theta[small]
        acc = np.zeros((ts.size, count), dtype=complex)
        power = np.ones(ts.size, dtype=complex)
        for p in range(200):
            if p > 2 and float(np.abs(power).max()) * 2.0 < 1e-18:
                break
            for k in range(count):
                if (k + p) % 2 == 0:
                    acc[:, k] += power * (2.0 / (k + p + 1))
            power = power * (1j * ts) / (p + 1)
        out[small] = acc
    return out


_CHEB_CACHE: dict = {}


def _cheb_interp_setup(m: int):
    # Chebyshev-Gauss reference points and the inverse Vandermonde mapping
    # point values to monomial coefficients on [-1, 1].
    if m not in _CHEB_CACHE:
        i = np.arange(1, m + 1)
        xi = np.sort(np.cos((2 * i - 1) * np.pi / (2 * m)))
        vinv = np.linalg.inv(np.vander(xi, m, increasing=True))
        _CHEB_CACHE[m] = (xi, vinv.T.copy())
    return _CHEB_CACHE[m]


def _cmf_panels(amp, w_eff: float, edges: np.ndarray, m: int) -> np.ndarray:
    # Moment-free Filon values on consecutive panels: interpolate the
    # non-oscillatory amplitude at m + 1 mapped Chebyshev points, integrate
    # the degree-m interpolant against e^{i w_eff x} exactly via
    # exponential moments.
    xi, vinv_t = _cheb_interp_setup(m + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = mid[:, None] + half[:, None] * xi[None, :]
    vals = np.asarray(amp(pts.ravel()), dtype=complex).reshape(pts.shape)
    coeffs = vals @ vinv_t
    mom = exponential_moments(w_eff * half, m + 1)
    return half * np.exp(1j * w_eff * mid) * np.sum(coeffs * mom, axis=1)


def cmf_composite(target, n: int, m: int, a: float, b: float, w=None) -> complex:
    """Composite moment-free Filon rule on [a, b] with n equal panels.

    ``target`` is either a ProblemSpec with a linear oscillator (its
    singular amplitude f(x) x^alpha (log x) is interpolated; the result
    includes the problem's phase shift) or a plain non-oscillatory
    callable, in which case ``w`` must be given.
    """
    if n < 1 or m < 1:
        raise ParameterError("n and m must be at least 1")
    if not a < b:
        raise ParameterError("need a < b")
    if isinstance(target, ProblemSpec):
        beta = _linear_slope(target)
        w_eff = target.w * beta
        amp = _singular_amplitude_fn(target)
        shift = target.phase_shift
    else:
        if w is None:
            raise ParameterError("w is required for a plain callable")
        w_eff = float(w)
        amp = target
        shift = 1.0 + 0.0j
    edges = np.linspace(a, b, n + 1)
    return complex(np.sum(_cmf_panels(amp, w_eff, edges, m)) * shift)


@dataclass(frozen=True)
class CMFPParams:
    """Parameters of the composite CMFP rule.

    n geometric panels carry the moment-free Filon part, s graded panels
    the Gauss-Legendre part, with m1 / m2 points per panel.  The grading
    exponent is p = (2 m1 + 1)/(1 + mu_index); w_r = max(k sigma_r, k)
    for k = |w g'(0)| and lambda_r = w_r^{-1/(r+1)}, with the stationary
    order r fixed at 0.
    """

    n: int
    s: int
    m1: int
    m2: int
    p: float
    mu_index: float
    r: int
    sigma_r: float
    w_r: float
    lambda_r: float


def _linear_slope(spec: ProblemSpec) -> float:
    poly = spec.oscillator.poly
    if poly is not None:
        coeffs = np.trim_zeros(np.asarray(poly, dtype=float), "b")
        if coeffs.size == 2 and coeffs[0] == 0.0 and coeffs[1] > 0.0:
            return float(coeffs[1])
    raise CapabilityError(
        "the composite baseline supports linear oscillators only"
    )


def _singular_amplitude_fn(spec: ProblemSpec):
    alpha = spec.alpha
    log_kind = spec.kind is SingKind.ALGEBRAIC_LOG

    def amp(x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(spec.amplitude.value(x), dtype=complex) * x**alpha
        if log_kind:
            out = out * np.log(x)
        return out

    return amp


def default_cmfp_params(spec: ProblemSpec, n1: int) -> CMFPParams:
    """Benchmark-configuration parameters: n = s = n1, m1 = m2 = 4."""
    if n1 < 1:
        raise ParameterError("n1 must be at least 1")
    beta = _linear_slope(spec)
    m1 = 4
    w_r = abs(spec.w * beta)
    return CMFPParams(
        n=n1,
        s=n1,
        m1=m1,
        m2=4,
        p=(2.0 * m1 + 1.0) / (1.0 + spec.alpha),
        mu_index=spec.alpha,
        r=0,
        sigma_r=1.0,
        w_r=w_r,
        lambda_r=1.0 / w_r,
    )


def _validate_cmfp(params: CMFPParams, w_eff: float) -> None:
    if params.r != 0:
        raise ParameterError("only stationary order r = 0 is supported")
    if params.n < 1 or params.s < 1:
        raise ParameterError("n and s must be at least 1")
    if params.m1 < 1 or params.m2 < 1:
        raise ParameterError("m1 and m2 must be at least 1")
    if not params.p > 0:
        raise ParameterError("grading exponent p must be positive")
    expected_wr = max(abs(w_eff) * params.sigma_r, abs(w_eff))
    if abs(params.w_r - expected_wr) > 1e-9 * expected_wr:
        raise ParameterError(
            f"w_r={params.w_r!r} inconsistent with max(k sigma_r, k)={expected_wr!r}"
        )
    if abs(params.lambda_r * params.w_r - 1.0) > 1e-9:
        raise ParameterError("lambda_r must equal 1/w_r for r = 0")


def cmfp(spec: ProblemSpec, params: CMFPParams, n_sub=None) -> QuadratureResult:
    """Composite moment-free Filon-type quadrature for linear oscillators.

    The value is the graded Gauss-Legendre part

        lambda_r sum_{j=1}^{s-1} GL_{m1}[F(lambda_r .); x_j, x_{j+1}],
        x_j = (j/s)^p

    (the innermost panel is truncated, its contribution vanishing with the
    grading) plus the composite moment-free Filon part on the geometric
    mesh y_j = w_r^{(j-n)/n} covering [1/w_r, 1].  Each geometric panel is
    refined into N_j equal moment-free sub-panels of m2 points.

    ``n_sub`` overrides the refinement counts (one integer per geometric
    panel).  The default resolves each panel against its own width ratio,
    N_j = ceil(q^{m2/(m2-1)}) with q = y_j / y_{j-1} = w_r^{1/n}; the
    defining formula's per-panel count is stated in terms of an
    inverse-oscillator ratio that degenerates for a linear oscillator, so
    the count is exposed here as a direct tuning sequence.
    """
    beta = _linear_slope(spec)
    w_eff = spec.w * beta
    _validate_cmfp(params, w_eff)
    lam = params.lambda_r
    gl_part = 0.0 + 0.0j
    points = 0
    if params.s >= 2:
        xg, wgl = roots_legendre(params.m1)
        grading = (np.arange(params.s + 1, dtype=float) / params.s) ** params.p
        lo = grading[1:-1]
        hi = grading[2:]
        mid = 0.5 * (hi + lo)
        half = 0.5 * (hi - lo)
        pts = mid[:, None] + half[:, None] * xg[None, :]
        vals = integrand(spec, lam * pts.ravel()).reshape(pts.shape)
        per_panel = half * (vals @ wgl)
        gl_part = lam * np.sum(per_panel)
        points += pts.size
    yedges = params.w_r ** ((np.arange(params.n + 1, dtype=float) - params.n) / params.n)
    if n_sub is None:
        ratio = params.w_r ** (1.0 / params.n)
        n_sub = [int(np.ceil(ratio ** (params.m2 / (params.m2 - 1.0))))] * params.n
    n_sub = [int(c) for c in n_sub]
    if len(n_sub) != params.n or any(c < 1 for c in n_sub):
        raise ParameterError("n_sub needs one positive count per geometric panel")
    edges = np.concatenate(
        [np.linspace(yedges[j], yedges[j + 1], n_sub[j] + 1)[:-1] for j in range(params.n)]
        + [yedges[-1:]]
    )
    cmf_vals = _cmf_panels(_singular_amplitude_fn(spec), w_eff, edges, params.m2)
    cmf_part = np.sum(cmf_vals)
    points += sum(n_sub) * params.m2
    value = (gl_part + cmf_part) * spec.phase_shift
    # The result's s is the asymptotic-order parameter, which the
    # composite rule does not have; params.s counts graded panels.
    return QuadratureResult(
        value=complex(value),
        method=Method.CMFP,
        s=0,
        n=params.n,
        diagnostics={
            "points": points,
            "w_r": params.w_r,
            "graded_panels": params.s,
        },
    )


def graded_integral(
    func,
    a: float,
    alpha: float,
    osc_rate: float = 0.0,
    depth=None,
    gl_order: int = 24,
    cap_factor: float = 0.25,
) -> complex:
    """Brute-force ``int_0^a func`` for an endpoint-singular integrand.

    Geometric panels [a 2^{-k-1}, a 2^{-k}] (innermost tail truncated at a
    depth that makes the x^alpha log x remainder negligible), each split
    further so no sub-panel spans more than ``cap_factor`` of an
    oscillation period of rate ``osc_rate``, then Gauss-Legendre of order
    ``gl_order`` per sub-panel.  Panels are summed smallest first.

    ``func`` must accept numpy arrays.  ``osc_rate = 0`` disables the
    oscillation cap, which also makes w = 0 integrands usable.
    """
    if not a > 0:
        raise ParameterError("a must be positive")
    if not alpha > -1:
        raise ParameterError("alpha must exceed -1 for an integrable endpoint")
    if depth is None:
        depth = max(120, int(np.ceil(60.0 / (1.0 + alpha))) + 40)
    xg, wgl = roots_legendre(gl_order)
    cap = np.inf if osc_rate == 0 else cap_factor * 2.0 * np.pi / osc_rate
    # Sub-panel values are accumulated with exact (compensated) summation so
    # the oracle floor is set by per-panel rounding, not by the running sum.
    pieces = []
    for k in range(depth):
        hi = a * 0.5**k
        lo = 0.5 * hi
        nsub = max(1, int(np.ceil((hi - lo) / cap)))
        edges = np.linspace(lo, hi, nsub + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        pts = mid[:, None] + half[:, None] * xg[None, :]
        fv = np.asarray(func(pts.ravel()), dtype=complex).reshape(pts.shape)
        pieces.append(half * (fv @ wgl))
    flat = np.concatenate(pieces[::-1])
    return complex(math.fsum(flat.real) + 1j * math.fsum(flat.imag))


def reference_oracle(
    spec: ProblemSpec,
    depth=None,
    gl_order: int = 24,
    cap_factor: float = 0.25,
) -> complex:
    """Ground-truth value by graded brute force, for moderate frequencies.

    Declared accuracy ~1e-11 relative, cross-validated by doubling depth
    and order.  Refuses |w| g(a) beyond the phase cap, where panel counts
    and round-off accumulation defeat the declared accuracy.
    """
    phase_range = abs(spec.w) * spec.g_end()
    if phase_range > ORACLE_PHASE_CAP:
        raise CapabilityError(
            f"oracle refuses |w| g(a) = {phase_range:.3g} > {ORACLE_PHASE_CAP:.3g}; "
            "use the high-order self-reference instead"
        )
    sample = np.linspace(0.0, spec.a, 257)
    gp_max = float(np.max(np.abs(spec.oscillator.deriv1(sample))))
    value = graded_integral(
        lambda x: integrand(spec, x),
        spec.a,
        spec.alpha,
        osc_rate=abs(spec.w) * gp_max,
        depth=depth,
        gl_order=gl_order,
        cap_factor=cap_factor,
    )
    return complex(value * spec.phase_shift)
