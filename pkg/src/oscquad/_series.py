"""Truncated power (Taylor) series arithmetic.

A series is a 1-D numpy array ``p`` of length ``m`` representing
``sum_k p[k] * (x - x0)**k`` with all terms of order ``m`` and higher
discarded.  Every smooth quantity the collocation methods need (regularized
amplitudes, oscillator powers, basis function images under the Levin
operator) is assembled from these primitives, so derivative values come out
to machine precision instead of finite-difference accuracy.

All helpers return arrays of the same length as their inputs and promote to
complex when any input is complex.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

__all__ = [
    "ps_mul",
    "ps_div",
    "ps_pow",
    "ps_log",
    "poly_taylor",
]


def _as_series(p) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(p))
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterError("series must be a non-empty 1-D array")
    return arr


def ps_mul(a, b) -> np.ndarray:
    """Product of two truncated series (Cauchy convolution).

    Parameters
    ----------
    a, b : array_like
        Coefficient arrays of equal length ``m``.

    Returns
    -------
    ndarray
        Coefficients of ``a * b`` truncated to length ``m``.
    """
    a = _as_series(a)
    b = _as_series(b)
    if a.size != b.size:
        raise ParameterError("series lengths must match")
    m = a.size
    out = np.zeros(m, dtype=np.result_type(a, b, float))
    for n in range(m):
        out[n] = np.dot(a[: n + 1], b[n::-1])
    return out


def ps_div(a, b) -> np.ndarray:
    """Quotient ``a / b`` of truncated series; requires ``b[0] != 0``."""
    a = _as_series(a)
    b = _as_series(b)
    if a.size != b.size:
        raise ParameterError("series lengths must match")
    if b[0] == 0:
        raise ParameterError("division by a series with zero constant term")
    m = a.size
    out = np.zeros(m, dtype=np.result_type(a, b, float))
    for n in range(m):
        acc = a[n]
        for k in range(n):
            acc -= out[k] * b[n - k]
        out[n] = acc / b[0]
    return out


def ps_pow(a, alpha: float) -> np.ndarray:
    """Real power ``a**alpha`` of a truncated series.

    Uses the standard recurrence obtained from ``(a**alpha)' * a =
    alpha * a' * a**alpha``.  The constant term ``a[0]`` must be positive so
    the principal branch is well defined for non-integer ``alpha``.
    """
    a = _as_series(a)
    if not (a[0].real > 0 and a[0].imag == 0):
        raise ParameterError("ps_pow requires a positive real constant term")
    m = a.size
    out = np.zeros(m, dtype=np.result_type(a, float))
    out[0] = a[0] ** alpha
    for n in range(1, m):
        acc = 0.0
        for k in range(1, n + 1):
            acc += (alpha * k - (n - k)) * a[k] * out[n - k]
        out[n] = acc / (n * a[0])
    return out


def ps_log(a) -> np.ndarray:
    """Natural log of a truncated series with positive constant term."""
    a = _as_series(a)
    if not (a[0].real > 0 and a[0].imag == 0):
        raise ParameterError("ps_log requires a positive real constant term")
    m = a.size
    out = np.zeros(m, dtype=np.result_type(a, float))
    out[0] = np.log(a[0])
    for n in range(1, m):
        acc = n * a[n]
        for k in range(1, n):
            acc -= k * out[k] * a[n - k]
        out[n] = acc / (n * a[0])
    return out


def poly_taylor(coeffs, x0: float, m: int) -> np.ndarray:
    """Taylor coefficients at ``x0`` of a polynomial, truncated to length ``m``.

    Parameters
    ----------
    coeffs : array_like
        Polynomial coefficients in ascending order, ``p(x) = sum c_k x**k``.
    x0 : float
        Expansion point.
    m : int
        Number of series terms to keep.

    Returns
    -------
    ndarray
        ``m`` Taylor coefficients of ``p`` about ``x0``.
    """
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if m < 1:
        raise ParameterError("m must be at least 1")
    out = np.zeros(m, dtype=np.result_type(coeffs, float))
    # Horner with a shifted variable: repeatedly multiply by (u + x0).
    for c in coeffs[::-1]:
        shifted = np.zeros_like(out)
        shifted[0] = x0 * out[0] + c
        for k in range(1, m):
            shifted[k] = x0 * out[k] + out[k - 1]
        out = shifted
    return out
