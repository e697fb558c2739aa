"""Chebyshev collocation grids on [0, a].

Two families are provided.  The modified Gauss-Radau family places ``n``
nodes in (0, a] with ``x_n = a`` and the origin deliberately excluded; the
physical-space Levin solver differentiates on these nodes and reaches the
origin through extrapolation weights.  The modified Lobatto family includes
both endpoints and serves the frequency-space (Hermite) collocation methods.

The differentiation matrix is built barycentrically in the physical
variable, which sidesteps the orientation and sign ambiguities of mapping a
reference-variable matrix.  A closed-form reference-variable matrix and the
closed-form origin-extrapolation weights are implemented as well and checked
against the barycentric construction at grid build time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import FormulaMismatchError, ParameterError

__all__ = [
    "GridFamily",
    "ChebGrid",
    "barycentric_weights",
    "barycentric_diff",
    "barycentric_eval",
    "radau_reference_nodes",
    "radau_reference_diff",
    "radau_origin_weights_closed",
    "radau_grid",
    "lobatto_grid",
]


class GridFamily(Enum):
    RADAU_MODIFIED = "radau-modified"
    LOBATTO_MODIFIED = "lobatto-modified"


@dataclass(frozen=True)
class ChebGrid:
    """Immutable collocation grid.

    Attributes
    ----------
    family : GridFamily
    n : int
        Family parameter: number of Radau nodes, or Lobatto index (node
        count minus one).
    a : float
        Interval end.
    nodes : ndarray
        Full ascending node set starting at 0.
    interior : ndarray
        Nodes the differentiation matrix acts on (excludes 0 for Radau).
    diff : ndarray
        Dense first-derivative matrix on ``interior``.
    origin_weights : ndarray or None
        Extrapolation-to-zero weights on ``interior`` (Radau only).
    bary_full : ndarray
        Barycentric weights of ``nodes`` for interpolant evaluation.
    """

    family: GridFamily
    n: int
    a: float
    nodes: np.ndarray
    interior: np.ndarray
    diff: np.ndarray
    origin_weights: np.ndarray | None
    bary_full: np.ndarray


def barycentric_weights(x: np.ndarray) -> np.ndarray:
    """Barycentric weights of distinct nodes, scaled for overflow safety."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2:
        raise ParameterError("need at least two nodes")
    scale = (x.max() - x.min()) / 4.0
    lam = np.empty(n)
    idx = np.arange(n)
    for i in range(n):
        lam[i] = 1.0 / np.prod((x[i] - x[idx != i]) / scale)
    return lam


def barycentric_diff(x: np.ndarray) -> np.ndarray:
    """First-derivative collocation matrix on arbitrary distinct nodes.

    Off-diagonal entries follow the barycentric formula; diagonals use the
    negative-sum trick so every row annihilates constants exactly.
    """
    x = np.asarray(x, dtype=float)
    lam = barycentric_weights(x)
    n = x.size
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                D[i, j] = (lam[j] / lam[i]) / (x[i] - x[j])
        D[i, i] = -D[i].sum()
    return D


def barycentric_eval(grid: ChebGrid, values, x: float) -> complex:
    """Evaluate the interpolating polynomial through ``grid.nodes``.

    Parameters
    ----------
    grid : ChebGrid
    values : array_like
        Function values at ``grid.nodes`` (same length).
    x : float
        Query point in [0, a].

    Returns
    -------
    complex
    """
    values = np.asarray(values)
    if values.shape != grid.nodes.shape:
        raise ParameterError("values length must match node count")
    diff = x - grid.nodes
    exact = np.nonzero(diff == 0.0)[0]
    if exact.size:
        return complex(values[exact[0]])
    weights = grid.bary_full / diff
    return complex(np.dot(weights, values) / weights.sum())


def radau_reference_nodes(n: int) -> np.ndarray:
    """Reference Radau nodes t_j = -cos(2 j pi / (2n-1)), j=0..n-1."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    j = np.arange(n)
    t = -np.cos(2.0 * j * np.pi / (2 * n - 1))
    t[0] = -1.0
    return t


def _cheb_t(k: int, t: np.ndarray) -> np.ndarray:
    return np.cos(k * np.arccos(np.clip(t, -1.0, 1.0)))


def _cheb_t_deriv(k: int, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    inner = np.abs(t) < 1.0
    theta = np.arccos(t[inner])
    out[inner] = k * np.sin(k * theta) / np.sin(theta)
    out[~inner] = np.where(t[~inner] >= 1.0, float(k * k), (-1.0) ** (k + 1) * k * k)
    return out


def radau_reference_diff(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form differentiation matrix in the reference variable t.

    Returns the Radau reference nodes and the matrix whose (k,j) entry
    differentiates the interpolant of the node basis, with the corner value
    -n(n-1)/3 and diagonal/off-diagonal entries expressed through the
    Chebyshev combination Q(t) = T_n(t) + T_{n-1}(t).
    """
    t = radau_reference_nodes(n)
    qp = _cheb_t_deriv(n, t) + _cheb_t_deriv(n - 1, t)
    D = np.zeros((n, n))
    for k in range(n):
        for j in range(n):
            if k == j:
                if k == 0:
                    D[k, j] = -n * (n - 1) / 3.0
                else:
                    D[k, j] = t[k] / (2.0 * (1.0 - t[k] ** 2)) + (2 * n - 1) * _cheb_t(
                        n - 1, np.array([t[k]])
                    )[0] / (2.0 * (1.0 - t[k] ** 2) * qp[k])
            else:
                D[k, j] = qp[k] / qp[j] / (t[k] - t[j])
    return t, D


def radau_origin_weights_closed(n: int) -> np.ndarray:
    """Closed-form extrapolation-to-origin weights on ascending Radau nodes.

    Weight of the largest node x_n is cos((n-1)pi)/(2n-1); the weight of
    x_{n-j} is (2/(2n-1)) cos((n-1-j)pi) sec(j pi/(2n-1)) for j=1..n-1.
    """
    if n < 2:
        raise ParameterError("n must be at least 2")
    r = np.zeros(n)
    r[n - 1] = math.cos((n - 1) * math.pi) / (2 * n - 1)
    for j in range(1, n):
        r[n - 1 - j] = (
            (2.0 / (2 * n - 1))
            * math.cos((n - 1 - j) * math.pi)
            / math.cos(j * math.pi / (2 * n - 1))
        )
    return r


def _validate_grid(nodes: np.ndarray, diff: np.ndarray, interior: np.ndarray) -> None:
    if not np.all(np.diff(nodes) > 0) or nodes[0] != 0.0:
        raise ParameterError("nodes must be strictly increasing from 0")
    # Scale-aware: entries grow like n^2/a, so summation-order round-off in
    # the row sums grows with them even though the diagonal is constructed
    # to cancel the off-diagonals exactly.
    row_sums = np.abs(diff @ np.ones(interior.size)).max()
    if row_sums > 1e-12 * max(1.0, float(np.abs(diff).max())):
        raise FormulaMismatchError(f"differentiation rows do not annihilate constants ({row_sums:.2e})")


def radau_grid(n: int, a: float) -> ChebGrid:
    """Modified Chebyshev-Gauss-Radau grid with the origin excluded.

    Parameters
    ----------
    n : int
        Number of Radau nodes, at least 2.
    a : float
        Positive interval end.

    Returns
    -------
    ChebGrid
        ``nodes`` = {0} followed by the ascending mapped Radau points (the
        largest equals ``a``); ``diff`` acts on the mapped points;
        ``origin_weights`` extrapolate values there to x=0.

    Raises
    ------
    FormulaMismatchError
        If the barycentric construction disagrees with the closed-form
        reference matrix or origin weights beyond 1e-9.
    """
    if n < 2:
        raise ParameterError("n must be at least 2")
    if not a > 0:
        raise ParameterError("a must be positive")
    t = radau_reference_nodes(n)
    xs = a * (1.0 - t[::-1]) / 2.0
    D = barycentric_diff(xs)
    # Cross-check against the reference-variable closed form: with x(t) =
    # a(1-t)/2 and the ascending reordering R, D = (-2/a) R D_ref R.
    _, Dref = radau_reference_diff(n)
    mapped = (-2.0 / a) * Dref[::-1, ::-1]
    scale = np.abs(mapped).max()
    if np.abs(D - mapped).max() > 1e-9 * max(scale, 1.0):
        raise FormulaMismatchError("barycentric and closed-form Radau matrices disagree")
    lam = barycentric_weights(xs)
    mu = lam / (0.0 - xs)
    r = mu / mu.sum()
    r_closed = radau_origin_weights_closed(n)
    if np.abs(r - r_closed).max() > 1e-9:
        raise FormulaMismatchError("barycentric and closed-form origin weights disagree")
    nodes = np.concatenate(([0.0], xs))
    _validate_grid(nodes, D, xs)
    return ChebGrid(
        family=GridFamily.RADAU_MODIFIED,
        n=n,
        a=float(a),
        nodes=nodes,
        interior=xs,
        diff=D,
        origin_weights=r,
        bary_full=barycentric_weights(nodes),
    )


def lobatto_grid(n: int, a: float) -> ChebGrid:
    """Modified Chebyshev-Lobatto grid with both endpoints included.

    Parameters
    ----------
    n : int
        Lobatto index; the grid has ``n+1`` nodes a(1-cos(j pi/n))/2.
    a : float
        Positive interval end.
    """
    if n < 2:
        raise ParameterError("n must be at least 2")
    if not a > 0:
        raise ParameterError("a must be positive")
    j = np.arange(n + 1)
    nodes = a * (1.0 - np.cos(j * np.pi / n)) / 2.0
    nodes[0] = 0.0
    nodes[-1] = a
    D = barycentric_diff(nodes)
    _validate_grid(nodes, D, nodes)
    return ChebGrid(
        family=GridFamily.LOBATTO_MODIFIED,
        n=n,
        a=float(a),
        nodes=nodes,
        interior=nodes,
        diff=D,
        origin_weights=None,
        bary_full=barycentric_weights(nodes),
    )
