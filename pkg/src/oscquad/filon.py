"""Frequency-space collocation: Hermite Filon rules and the Levin solve.

These are the methods that support endpoint multiplicities s >= 1.  Both
collocate on ``npts`` modified Chebyshev-Lobatto points with multiplicities
(s+1, 1, ..., 1, s+1); the table parameter "n" of the benchmark equals
``npts``.

The Filon route interpolates the regularized amplitude f1 in the basis
Psi = {g', g' g, g' g^2, ...} and integrates exactly against the
generalized moments mu_j (and nu_j for the logarithmic weight).  The Levin
route expands q1 in Chebyshev polynomials (or in powers of g, the basis
that makes the two routes coincide for linear oscillators) and collocates
the model ODE; all derivative conditions are generated by truncated power
series arithmetic, which stays stable at degrees where naive
Chebyshev-to-monomial conversion does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from ._result import Method, QuadratureResult
from ._series import ps_mul
from .cheb import lobatto_grid
from .errors import (
    CapabilityError,
    DegenerateSystemError,
    FormulaMismatchError,
    ParameterError,
)
from .levin import tsvd_solve
from .numkernel import (
    gamma_real,
    hyp2f2_equal,
    kernel_h_alg,
    kernel_h_log,
    neg_iw_pow,
    upper_gamma_complex,
)
from .problem import Amplitude, ProblemSpec, SingKind, make_f1_f2

__all__ = [
    "FreqBasis",
    "MomentTable",
    "HermiteData",
    "moments_mu",
    "moments_nu",
    "build_moment_table",
    "build_hermite_data",
    "hermite_solve",
    "quad_filon",
    "solve_freq",
    "quad_freq",
    "FREQ_TSVD_THRESHOLD",
    "MAX_BASIS_SIZE",
]

# The frequency-space systems are deliberately solved with a much smaller
# drop tolerance than the physical-space default: their conditioning grows
# with npts and a loose threshold silently discards resolved directions.
FREQ_TSVD_THRESHOLD = 1e-13
MAX_BASIS_SIZE = 40


class FreqBasis(Enum):
    CHEBYSHEV = "chebyshev"
    POWERS_OF_G = "powers-of-g"


@dataclass(frozen=True)
class MomentTable:
    """Generalized moments of the oscillatory weight.

    ``mu[j]`` is ``int_0^a g' g^{j+alpha} e^{iwg} dx = int_0^{g_a}
    u^{j+alpha} e^{iwu} du`` and ``nu[j]`` the same with an extra
    ``log u`` factor, for j = 0..count-1.
    """

    mu: np.ndarray
    nu: Optional[np.ndarray]
    alpha: float
    w: float
    g_a: float


@dataclass(frozen=True)
class HermiteData:
    """Interpolation data for the Filon rule.

    ``values[l][j]`` holds the j-th derivative of the interpolated
    amplitude at node l, j < mults[l].
    """

    nodes: np.ndarray
    mults: np.ndarray
    values: list

    @property
    def basis_size(self) -> int:
        return int(self.mults.sum())


def moments_mu(alpha: float, w: float, g_a: float, count: int) -> np.ndarray:
    """Moments mu_1..mu_count by closed form plus forward recurrence.

    ``mu_1 = (Gamma(1+alpha) - Gamma(1+alpha, -iw g_a)) / (-iw)^{1+alpha}``
    and ``mu_{j+1} = -((j+alpha)/(iw)) mu_j + g_a^{j+alpha} e^{iw g_a}/(iw)``.
    """
    if w == 0:
        raise ParameterError("w must be nonzero")
    if not g_a > 0:
        raise ParameterError("g_a must be positive")
    if count < 1:
        raise ParameterError("count must be at least 1")
    mu = np.zeros(count, dtype=complex)
    upper, _ = upper_gamma_complex(1.0 + alpha, -1j * w * g_a)
    mu[0] = (gamma_real(1.0 + alpha) - upper) / neg_iw_pow(1.0 + alpha, w)
    phase_end = np.exp(1j * w * g_a)
    for j in range(1, count):
        mu[j] = -((j + alpha) / (1j * w)) * mu[j - 1] + g_a ** (j + alpha) * phase_end / (1j * w)
    return mu


def _log_moment_oracle(alpha: float, w: float, g_a: float) -> complex:
    # Brute-force int_0^{g_a} u^alpha log(u) e^{iwu} du on a geometric mesh
    # with oscillation-capped Gauss-Legendre panels; used only to validate
    # the printed nu_1 closed form.
    from scipy.special import roots_legendre

    xg, wg = roots_legendre(24)
    depth = int(60.0 / (1.0 + alpha)) + 40
    cap = (2 * np.pi / abs(w)) / 4.0
    pieces = []
    for k in range(depth):
        hi = g_a * 0.5**k
        lo = hi / 2.0
        nsub = max(1, int(np.ceil((hi - lo) / cap)))
        edges = np.linspace(lo, hi, nsub + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        u = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        ww = (half[:, None] * wg[None, :]).ravel()
        pieces.append(np.dot(ww, u**alpha * np.log(u) * np.exp(1j * w * u)))
    return complex(np.sum(np.array(pieces)[::-1]))


def moments_nu(
    alpha: float,
    w: float,
    g_a: float,
    mu: np.ndarray,
    count: Optional[int] = None,
    validate: bool = False,
) -> np.ndarray:
    """Logarithmic moments nu_1..nu_count.

    ``nu_1`` combines the mu_1 closed form with an equal-parameter 2F2 term;
    the recurrence adds a ``-mu_j/(iw)`` coupling.  With ``validate=True``
    the nu_1 value is checked against brute-force quadrature of its
    defining integral and a mismatch raises FormulaMismatchError.
    """
    mu = np.asarray(mu, dtype=complex)
    if count is None:
        count = mu.size
    if count > mu.size:
        raise ParameterError("count exceeds available mu entries")
    nu = np.zeros(count, dtype=complex)
    upper, _ = upper_gamma_complex(1.0 + alpha, -1j * w * g_a)
    f22, _ = hyp2f2_equal(1.0 + alpha, 1j * w * g_a)
    nu[0] = (
        np.log(g_a) * (gamma_real(1.0 + alpha) - upper) / neg_iw_pow(1.0 + alpha, w)
        - g_a ** (1.0 + alpha) / (1.0 + alpha) ** 2 * f22
    )
    if validate:
        oracle = _log_moment_oracle(alpha, w, g_a)
        if abs(nu[0] - oracle) > 1e-9 * max(1.0, abs(oracle)):
            raise FormulaMismatchError(
                f"nu_1 closed form {nu[0]!r} disagrees with quadrature oracle {oracle!r}"
            )
    log_end = np.log(g_a) * np.exp(1j * w * g_a)
    for j in range(1, count):
        nu[j] = (
            -((j + alpha) / (1j * w)) * nu[j - 1]
            - mu[j - 1] / (1j * w)
            + g_a ** (j + alpha) * log_end / (1j * w)
        )
    return nu


def build_moment_table(spec: ProblemSpec, count: int, validate: bool = False) -> MomentTable:
    """Moment table of a problem, with nu present for the logarithmic kind."""
    g_a = spec.g_end()
    mu = moments_mu(spec.alpha, spec.w, g_a, count)
    nu = None
    if spec.kind is SingKind.ALGEBRAIC_LOG:
        nu = moments_nu(spec.alpha, spec.w, g_a, mu, count, validate=validate)
    return MomentTable(mu=mu, nu=nu, alpha=spec.alpha, w=spec.w, g_a=g_a)


def _collocation_nodes(npts: int, s: int, a: float):
    if npts < 3:
        raise ParameterError("need at least 3 collocation points")
    if s < 0:
        raise ParameterError("s must be nonnegative")
    nodes = lobatto_grid(npts - 1, a).nodes
    mults = np.ones(npts, dtype=int)
    mults[0] = s + 1
    mults[-1] = s + 1
    return nodes, mults


def _factorial_ladder(m: int) -> np.ndarray:
    out = np.ones(m)
    for j in range(2, m):
        out[j] = out[j - 1] * j
    return out


def build_hermite_data(
    spec: ProblemSpec,
    npts: int,
    s: int,
    amplitude: Optional[Amplitude] = None,
) -> HermiteData:
    """Hermite interpolation data of f1 (or a supplied amplitude).

    Endpoint multiplicities are s+1, interior ones 1.  Derivatives come
    from the amplitude's exact local series.
    """
    nodes, mults = _collocation_nodes(npts, s, spec.a)
    amp = amplitude if amplitude is not None else make_f1_f2(spec)[0]
    fact = _factorial_ladder(s + 1)
    values = []
    for x, m in zip(nodes, mults):
        coeffs = amp.series_at(float(x), int(m))
        values.append(coeffs * fact[:m])
    return HermiteData(nodes=nodes, mults=mults, values=values)


def _series_derivative(p: np.ndarray) -> np.ndarray:
    return np.arange(1, p.size) * p[1:]


def hermite_solve(data: HermiteData, spec: ProblemSpec) -> np.ndarray:
    """Interpolation coefficients in the basis phi_k = g' g^{k-1}.

    The generalized Vandermonde system is column-scaled by g(a)^{1-k} for
    conditioning and the interpolation conditions are re-checked a
    posteriori; failure raises DegenerateSystemError (reduce the basis
    size).
    """
    M1 = data.basis_size
    if M1 > MAX_BASIS_SIZE:
        raise CapabilityError(f"basis size {M1} exceeds the supported cap {MAX_BASIS_SIZE}")
    g_a = spec.g_end()
    osc = spec.oscillator
    rows = []
    rhs = []
    jmax = int(data.mults.max()) - 1
    fact = _factorial_ladder(jmax + 1)
    scale = g_a ** (1.0 - np.arange(1, M1 + 1))
    for x, m, vals in zip(data.nodes, data.mults, data.values):
        gser = osc.series_at(float(x), jmax + 3)
        gpser = _series_derivative(gser)
        phik = gpser[: jmax + 1].astype(complex)
        base = gser[: jmax + 1]
        cols = np.empty((M1, jmax + 1), dtype=complex)
        for k in range(M1):
            cols[k] = phik
            phik = ps_mul(phik, base)
        for j in range(m):
            rows.append(fact[j] * cols[:, j] * scale)
            rhs.append(vals[j])
    A = np.array(rows)
    b = np.array(rhs)
    try:
        y = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateSystemError(f"singular Hermite system: {exc}") from exc
    resid = np.abs(A @ y - b).max()
    if resid > 1e-9 * max(1.0, np.abs(b).max()):
        raise DegenerateSystemError(
            f"Hermite interpolation conditions violated ({resid:.2e}); reduce the basis size"
        )
    return y * scale


def quad_filon(spec: ProblemSpec, data: HermiteData) -> QuadratureResult:
    """Filon-type quadrature from Hermite data.

    Algebraic kind: ``sum_j p_j mu_j`` times the phase shift.  Logarithmic
    kind: the algebraic rule applied to the regularized f2 amplitude plus
    ``sum_j p_j nu_j``.
    """
    p = hermite_solve(data, spec)
    table = build_moment_table(spec, p.size)
    value = np.dot(p, table.mu)
    npts = int(data.nodes.size)
    s = int(data.mults[0]) - 1
    diagnostics = {"basis_size": int(p.size)}
    if spec.kind is SingKind.ALGEBRAIC_LOG:
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
        f21, _ = make_f1_f2(sub)
        sub_data = build_hermite_data(sub, npts, s, amplitude=f21)
        p2 = hermite_solve(sub_data, sub)
        value = np.dot(p2, table.mu) + np.dot(p, table.nu)
        diagnostics["basis_size_f2"] = int(p2.size)
    return QuadratureResult(
        value=complex(value * spec.phase_shift),
        method=Method.FILON,
        s=s,
        n=npts,
        diagnostics=diagnostics,
    )


def _cheb_series_table(x0: float, m: int, count: int, a: float) -> list:
    # Taylor series at x0 (length m) of T_0..T_{count-1}(2x/a - 1) via the
    # three-term recurrence carried out in series space; stable at degrees
    # where conversion to the monomial basis is not.
    u = np.zeros(m)
    u[0] = 2.0 * x0 / a - 1.0
    if m > 1:
        u[1] = 2.0 / a
    out = [np.zeros(m)]
    out[0][0] = 1.0
    if count >= 2:
        out.append(u.copy())
    for _ in range(2, count):
        out.append(2.0 * ps_mul(u, out[-1]) - out[-2])
    return out


def solve_freq(
    spec: ProblemSpec,
    npts: int,
    s: int,
    rhs_series_fn: Optional[Callable] = None,
    basis: FreqBasis = FreqBasis.CHEBYSHEV,
    threshold: float = FREQ_TSVD_THRESHOLD,
):
    """Frequency-space Levin collocation for (c0, q1).

    q1 is expanded in ``M = npts - 1 + 2s`` basis functions; the model ODE
    and its first s derivatives are collocated at the endpoints (interior
    nodes carry single conditions).  Returns ``(c0, coeffs, diag)`` where
    ``coeffs`` are the q1 expansion coefficients.

    Parameters
    ----------
    spec : ProblemSpec
    npts : int
        Number of Lobatto collocation points (the tables' n).
    s : int
        Endpoint multiplicity parameter.
    rhs_series_fn : callable, optional
        Local-series builder (x0, m) -> coefficients of the right-hand
        side; defaults to the regularized amplitude f1 of ``spec``.
    basis : FreqBasis
        Chebyshev polynomials (default) or powers of g (the representation
        in which the Filon equivalence is exact for linear oscillators).
    threshold : float
        Relative TSVD drop tolerance.
    """
    nodes, mults = _collocation_nodes(npts, s, spec.a)
    M = int(mults.sum()) - 1
    if M > MAX_BASIS_SIZE:
        raise CapabilityError(f"basis size {M} exceeds the supported cap {MAX_BASIS_SIZE}")
    if rhs_series_fn is None:
        rhs_series_fn = make_f1_f2(spec)[0].series_at
    alpha = spec.alpha
    w = spec.w
    osc = spec.oscillator
    jmax = s
    fact = _factorial_ladder(jmax + 1)
    rows = []
    rhs = []
    mlen = jmax + 2
    for x, mult in zip(nodes, mults):
        gser = osc.series_at(float(x), mlen)
        gpser = np.append(_series_derivative(gser), 0.0)
        fser = np.asarray(rhs_series_fn(float(x), jmax + 1), dtype=complex)
        if basis is FreqBasis.CHEBYSHEV:
            table = _cheb_series_table(float(x), mlen, M, spec.a)
        else:
            table = [np.zeros(mlen)]
            table[0][0] = 1.0
            for _ in range(1, M):
                table.append(ps_mul(table[-1], gser))
        gg = gser[: jmax + 1]
        gp = gpser[: jmax + 1]
        ggp = ps_mul(gg, gp)
        for j in range(int(mult)):
            row = np.zeros(M + 1, dtype=complex)
            row[0] = 1j * w * fact[j] * gp[j]
            for k in range(M):
                P = table[k][: jmax + 1]
                Pp = np.append(_series_derivative(table[k]), 0.0)[: jmax + 1]
                wk = ps_mul(gg, Pp) + (1.0 + alpha) * ps_mul(gp, P) + 1j * w * ps_mul(ggp, P)
                row[k + 1] = fact[j] * wk[j]
            rows.append(row)
            rhs.append(fact[j] * fser[j])
    sol, diag = tsvd_solve(np.array(rows), np.array(rhs), threshold)
    return complex(sol[0]), sol[1:], diag


def _eval_coeffs_at_end(coeffs: np.ndarray, basis: FreqBasis, g_a: float) -> complex:
    if basis is FreqBasis.CHEBYSHEV:
        return complex(np.polynomial.chebyshev.chebval(1.0, coeffs))
    return complex(np.polynomial.polynomial.polyval(g_a, coeffs))


def _coeff_series(coeffs: np.ndarray, basis: FreqBasis, x0: float, m: int, spec: ProblemSpec):
    if basis is FreqBasis.CHEBYSHEV:
        table = _cheb_series_table(x0, m, coeffs.size, spec.a)
    else:
        gser = spec.oscillator.series_at(x0, m)
        table = [np.zeros(m)]
        table[0][0] = 1.0
        for _ in range(1, coeffs.size):
            table.append(ps_mul(table[-1], gser))
    out = np.zeros(m, dtype=complex)
    for c, t in zip(coeffs, table):
        out += c * t
    return out


def _alg_boundary_value(spec: ProblemSpec, c0: complex, q1_end: complex) -> complex:
    g_a = spec.g_end()
    alpha = spec.alpha
    w = spec.w
    bracket = (
        g_a ** (1.0 + alpha) * q1_end
        + c0 * (1.0 - np.exp(-1j * w * g_a)) * g_a**alpha
        + kernel_h_alg(c0, alpha, w, g_a)
    )
    return bracket * np.exp(1j * w * g_a)


def quad_freq(
    spec: ProblemSpec,
    npts: int,
    s: int,
    basis: FreqBasis = FreqBasis.CHEBYSHEV,
    threshold: float = FREQ_TSVD_THRESHOLD,
) -> QuadratureResult:
    """Frequency-space Levin quadrature (algebraic or logarithmic kind).

    The logarithmic kind performs the coupled second solve with right-hand
    side ``-q1 g'`` and adds the algebraic rule applied to the regularized
    f2 amplitude, mirroring the physical-space assembly.
    """
    c0, coeffs, diag = solve_freq(spec, npts, s, basis=basis, threshold=threshold)
    g_a = spec.g_end()
    q1_end = _eval_coeffs_at_end(coeffs, basis, g_a)
    diagnostics = {
        "smallest_sv": diag.smallest_sv,
        "tsvd_truncated": diag.truncated,
    }
    if spec.kind is SingKind.ALGEBRAIC:
        value = _alg_boundary_value(spec, c0, q1_end)
        return QuadratureResult(
            value=complex(value * spec.phase_shift),
            method=Method.LEVIN_FREQ,
            s=s,
            n=npts,
            diagnostics=diagnostics,
        )

    def rhs2(x0, m):
        q1s = _coeff_series(coeffs, basis, x0, m + 1, spec)
        gps = _series_derivative(spec.oscillator.series_at(x0, m + 1))
        return -ps_mul(q1s[:m], gps[:m])

    d0, lcoeffs, diag2 = solve_freq(spec, npts, s, rhs_series_fn=rhs2, basis=basis, threshold=threshold)
    l1_end = _eval_coeffs_at_end(lcoeffs, basis, g_a)
    _, f2 = make_f1_f2(spec)
    sub = ProblemSpec(
        amplitude=f2,
        oscillator=spec.oscillator,
        a=spec.a,
        alpha=spec.alpha,
        kind=SingKind.ALGEBRAIC,
        w=spec.w,
        phase_shift=1.0 + 0.0j,
    )
    f21, _ = make_f1_f2(sub)
    c0_2, coeffs_2, _ = solve_freq(sub, npts, s, rhs_series_fn=f21.series_at, basis=basis, threshold=threshold)
    sub_value = _alg_boundary_value(sub, c0_2, _eval_coeffs_at_end(coeffs_2, basis, g_a))
    alpha = spec.alpha
    w = spec.w
    bracket = (
        (q1_end * np.log(g_a) + l1_end) * g_a ** (1.0 + alpha)
        + (c0 * np.log(g_a) + d0) * (1.0 - np.exp(-1j * w * g_a)) * g_a**alpha
        + kernel_h_log(c0, d0, alpha, w, g_a)
    )
    value = sub_value + bracket * np.exp(1j * w * g_a)
    diagnostics["smallest_sv_second"] = diag2.smallest_sv
    return QuadratureResult(
        value=complex(value * spec.phase_shift),
        method=Method.LEVIN_FREQ,
        s=s,
        n=npts,
        diagnostics=diagnostics,
    )
