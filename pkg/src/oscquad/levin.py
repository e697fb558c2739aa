"""Physical-space Levin collocation for the separated model ODE.

The unknowns are the constant c0 and the non-oscillatory factor q1 of the
ansatz p = q g^alpha + h (with q = c0 (1 - e^{-iwg}) g^{-alpha}... folded
into the explicit kernel) satisfying

    iw g'(x) c0 + g(x) q1'(x) + [1 + alpha + iw g(x)] g'(x) q1(x) = f1(x).

Collocation runs on the modified Gauss-Radau nodes, which exclude the
origin; the condition at x=0 replaces q1(0) by the extrapolation
r^T q1 through the grid's origin weights.  The resulting square system is
solved by truncated SVD, since exactly one near-null direction appears at
large n (the discrete trace of the continuous one-parameter solution
family).

The successive-approximation iterates of the underlying existence proof are
implemented in :func:`picard_iterate`; they converge to the collocation
solution at the rate O(w^{-k-1}) and serve as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cheb import ChebGrid, GridFamily, radau_grid
from .errors import DegenerateSystemError, InvalidOscillatorError, ParameterError
from .problem import ProblemSpec, make_f1_f2

__all__ = [
    "LevinSolution",
    "TsvdDiag",
    "assemble_L",
    "tsvd_solve",
    "solve_alg",
    "solve_log",
    "picard_iterate",
    "DEFAULT_TSVD_THRESHOLD",
]

DEFAULT_TSVD_THRESHOLD = 1e-8


@dataclass(frozen=True)
class TsvdDiag:
    """Diagnostics of a truncated-SVD solve."""

    smallest_sv: float
    largest_sv: float
    truncated: int


@dataclass(frozen=True)
class LevinSolution:
    """Collocation solution (c0, q1 at the grid's interior nodes).

    ``residual_norm`` is the max collocation residual
    |W[c0,q1](x_j) - f1(x_j)| over all rows including the origin row.
    """

    c0: complex
    q1_values: np.ndarray
    residual_norm: float
    tsvd_truncated: int
    smallest_sv: float
    grid: ChebGrid


def _node_data(spec: ProblemSpec, grid: ChebGrid):
    if grid.family is not GridFamily.RADAU_MODIFIED:
        raise ParameterError("physical-space solver requires a Radau grid")
    xs = grid.interior
    gx = np.asarray(spec.oscillator.value(xs), dtype=float)
    gpx = np.asarray(spec.oscillator.deriv1(xs), dtype=float)
    gp0 = float(spec.oscillator.series_at(0.0, 2)[1])
    if gp0 <= 0 or np.any(gpx <= 0):
        raise InvalidOscillatorError("g' must be positive at all collocation nodes")
    return xs, gx, gpx, gp0


def assemble_L(spec: ProblemSpec, grid: ChebGrid):
    """Collocation matrix and right-hand side on a Radau grid.

    Row 0 collocates the ODE at the excluded origin,
    ``iw g'(0) c0 + (1+alpha) g'(0) (r^T q1) = f1(0)``; row i collocates at
    the interior node x_i.  Unknown ordering is (c0, q1(x_1), ..., q1(x_n)).

    Returns
    -------
    L : ndarray, shape (n+1, n+1)
    rhs : ndarray, shape (n+1,)
    """
    xs, gx, gpx, gp0 = _node_data(spec, grid)
    n = xs.size
    alpha = spec.alpha
    w = spec.w
    f1, _ = make_f1_f2(spec)
    L = np.zeros((n + 1, n + 1), dtype=complex)
    rhs = np.zeros(n + 1, dtype=complex)
    L[0, 0] = 1j * w * gp0
    L[0, 1:] = (1.0 + alpha) * gp0 * grid.origin_weights
    rhs[0] = complex(f1.value(0.0))
    for i in range(n):
        L[i + 1, 0] = 1j * w * gpx[i]
        L[i + 1, 1:] += gx[i] * grid.diff[i, :]
        L[i + 1, 1 + i] += (1.0 + alpha + 1j * w * gx[i]) * gpx[i]
    rhs[1:] = np.asarray(f1.value(xs), dtype=complex)
    return L, rhs


def tsvd_solve(L: np.ndarray, rhs: np.ndarray, threshold: float = DEFAULT_TSVD_THRESHOLD):
    """Minimum-norm solve with singular values below ``threshold * s_max`` dropped.

    Returns
    -------
    x : ndarray
    diag : TsvdDiag

    Raises
    ------
    DegenerateSystemError
        If every singular value falls below the threshold.
    """
    L = np.asarray(L)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ParameterError("tsvd_solve expects a square system")
    U, S, Vh = np.linalg.svd(L)
    keep = S >= threshold * S[0]
    if S[0] == 0.0 or not keep.any():
        raise DegenerateSystemError("all singular values below TSVD threshold")
    coeff = (U.conj().T @ rhs)[keep] / S[keep]
    x = Vh.conj().T[:, keep] @ coeff
    return x, TsvdDiag(smallest_sv=float(S[-1]), largest_sv=float(S[0]), truncated=int((~keep).sum()))


def _solution_from(L, rhs, grid, threshold) -> LevinSolution:
    sol, diag = tsvd_solve(L, rhs, threshold)
    residual = float(np.abs(L @ sol - rhs).max())
    return LevinSolution(
        c0=complex(sol[0]),
        q1_values=sol[1:],
        residual_norm=residual,
        tsvd_truncated=diag.truncated,
        smallest_sv=diag.smallest_sv,
        grid=grid,
    )


def solve_alg(spec: ProblemSpec, n: int, threshold: float = DEFAULT_TSVD_THRESHOLD) -> LevinSolution:
    """Solve the collocation system for the regularized amplitude f1.

    Parameters
    ----------
    spec : ProblemSpec
        Any kind; the algebraic sub-operator is also the inner engine of
        the logarithmic path.
    n : int
        Number of Radau nodes.
    threshold : float, optional
        Relative TSVD drop threshold.
    """
    grid = radau_grid(n, spec.a)
    L, rhs = assemble_L(spec, grid)
    return _solution_from(L, rhs, grid, threshold)


def solve_log(spec: ProblemSpec, n: int, threshold: float = DEFAULT_TSVD_THRESHOLD):
    """Coupled solves of the logarithmic kind.

    The first solve is :func:`solve_alg` on f1.  The second reuses the same
    operator with right-hand side ``-q1(x) g'(x)`` (origin row:
    ``-q1(0) g'(0)`` with q1(0) extrapolated), yielding (d0, l1).

    Returns
    -------
    (LevinSolution, LevinSolution)
    """
    grid = radau_grid(n, spec.a)
    L, rhs = assemble_L(spec, grid)
    first = _solution_from(L, rhs, grid, threshold)
    xs = grid.interior
    gpx = np.asarray(spec.oscillator.deriv1(xs), dtype=float)
    gp0 = float(spec.oscillator.series_at(0.0, 2)[1])
    q1_origin = complex(np.dot(grid.origin_weights, first.q1_values))
    rhs2 = np.empty(xs.size + 1, dtype=complex)
    rhs2[0] = -q1_origin * gp0
    rhs2[1:] = -first.q1_values * gpx
    second = _solution_from(L, rhs2, grid, threshold)
    return first, second


def picard_iterate(spec: ProblemSpec, grid: ChebGrid, k: int):
    """Successive approximations to (c0, q1) on a Radau grid.

    Starting from q1^[0] = 0, each step evaluates

        Phi^[k] = (f1 - g D q1^[k-1] - (1+alpha) g' q1^[k-1]) / (iw g'),
        c0^[k]  = Phi^[k](0),
        q1^[k]  = (Phi^[k] - c0^[k]) / g,

    where D is the grid's spectral differentiation and Phi(0) comes from
    collocating the recursion at the origin (q1(0) by extrapolation).

    Parameters
    ----------
    spec : ProblemSpec
    grid : ChebGrid
        Radau family; each iterate costs smoothness, so k <= n/2.
    k : int
        Number of iterates to produce.

    Returns
    -------
    list of (complex, ndarray)
        [(c0^[1], q1^[1]), ..., (c0^[k], q1^[k])] at the interior nodes.
    """
    if k < 1:
        raise ParameterError("k must be at least 1")
    if k > grid.interior.size / 2:
        raise ParameterError(f"k={k} too large for an n={grid.interior.size} grid")
    xs, gx, gpx, gp0 = _node_data(spec, grid)
    alpha = spec.alpha
    w = spec.w
    f1, _ = make_f1_f2(spec)
    f1x = np.asarray(f1.value(xs), dtype=complex)
    f10 = complex(f1.value(0.0))
    r = grid.origin_weights
    q1 = np.zeros(xs.size, dtype=complex)
    out = []
    for _ in range(k):
        phi = (f1x - gx * (grid.diff @ q1) - (1.0 + alpha) * gpx * q1) / (1j * w * gpx)
        c0 = (f10 - (1.0 + alpha) * gp0 * complex(np.dot(r, q1))) / (1j * w * gp0)
        q1 = (phi - c0) / gx
        out.append((complex(c0), q1.copy()))
    return out
