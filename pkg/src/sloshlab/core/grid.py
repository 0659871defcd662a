"""Chebyshev collocation machinery shared by the meniscus, potential and
time-domain solvers.

All interface fields live on Chebyshev-Gauss-Lobatto nodes of a reference
interval [-1, 1], optionally mapped affinely onto a physical span.  The CGL
family is used deliberately: nodes cluster quadratically toward the interval
ends, which is where the contact points sit, so one-sided derivatives at the
contact line are taken where the grid is densest.

The module provides

* nodes and first/second differentiation matrices (Trefethen's construction),
* Clenshaw-Curtis quadrature weights on the same nodes,
* the nodal <-> Chebyshev-coefficient transform pair (the `spectral mirror'),
* barycentric interpolation off the grid, including mild extrapolation just
  past an endpoint (needed to intersect the interface with a curved wall).

Everything is plain numpy; matrices for a given size are cached since the
time stepper asks for them once per run.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "cheb_nodes",
    "cheb_diff",
    "cheb_diff2",
    "clenshaw_curtis_weights",
    "nodal_to_coeffs",
    "coeffs_to_nodal",
    "barycentric_weights",
    "barycentric_eval",
    "barycentric_matrix",
    "ChebGrid",
]


def cheb_nodes(n: int) -> NDArray[np.float64]:
    """n Chebyshev-Gauss-Lobatto nodes on [-1, 1], ascending."""
    if n < 2:
        raise ValueError("need at least two nodes")
    j = np.arange(n)
    # cos runs 1 -> -1; flip so x[0] = -1, x[-1] = +1
    return -np.cos(np.pi * j / (n - 1))


@lru_cache(maxsize=32)
def _diff_matrix(n: int) -> NDArray[np.float64]:
    x = cheb_nodes(n)
    c = np.ones(n)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n)
    X = x[:, None] - x[None, :]
    D = np.outer(c, 1.0 / c) / (X + np.eye(n))
    D -= np.diag(D.sum(axis=1))  # negative-sum trick for the diagonal
    return D


def cheb_diff(n: int) -> NDArray[np.float64]:
    """First-derivative collocation matrix on cheb_nodes(n)."""
    return _diff_matrix(n).copy()


@lru_cache(maxsize=32)
def _diff2_matrix(n: int) -> NDArray[np.float64]:
    D = _diff_matrix(n)
    return D @ D


def cheb_diff2(n: int) -> NDArray[np.float64]:
    return _diff2_matrix(n).copy()


@lru_cache(maxsize=32)
def _cc_weights(n: int) -> NDArray[np.float64]:
    """Clenshaw-Curtis weights for cheb_nodes(n) (integral over [-1, 1])."""
    m = n - 1
    if m == 1:
        return np.array([1.0, 1.0])
    k = np.arange(0, m // 2 + 1)
    # weights via the cosine series of the integrand moments
    w = np.zeros(n)
    theta = np.pi * np.arange(n) / m
    for j in range(n):
        s = 0.0
        for kk in range(1, m // 2 + 1):
            factor = 2.0 if (2 * kk < m) else 1.0
            s += factor * np.cos(2 * kk * theta[j]) / (4 * kk * kk - 1)
        w[j] = (2.0 / m) * (1.0 - s)
    w[0] /= 2.0
    w[-1] /= 2.0
    return w


def clenshaw_curtis_weights(n: int) -> NDArray[np.float64]:
    return _cc_weights(n).copy()


def nodal_to_coeffs(values: NDArray[np.float64]) -> NDArray[np.float64]:
    """Chebyshev T_k coefficients of the CGL interpolant of `values`.

    Returns a[k] such that f(x) = sum_k a[k] T_k(x) interpolates the nodal
    data on cheb_nodes(len(values)).
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    m = n - 1
    # nodes here ascend; the classical DCT ordering wants x = cos(j pi / m)
    vr = v[::-1]
    ext = np.concatenate([vr, vr[-2:0:-1]])  # even extension, length 2m
    fft = np.fft.rfft(ext).real
    a = fft[: n] / m
    a[0] /= 2.0
    a[-1] /= 2.0
    return a


def coeffs_to_nodal(coeffs: NDArray[np.float64]) -> NDArray[np.float64]:
    a = np.asarray(coeffs, dtype=float)
    n = a.size
    m = n - 1
    theta = np.pi * np.arange(n) / m
    # evaluate sum a_k cos(k theta) at the CGL angles
    k = np.arange(n)
    vals = np.cos(np.outer(theta, k)) @ a
    return vals[::-1]


def barycentric_weights(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Barycentric weights for distinct nodes.

    Affinely mapped Chebyshev nodes get the closed-form alternating
    weights (scale drops out of the barycentric formula); anything else
    falls back to products of differences, rescaled by the interval
    capacity so they neither overflow nor underflow at useful sizes.
    """
    n = x.size
    ref = cheb_nodes(n)
    span = x[-1] - x[0]
    if span != 0.0 and np.allclose(x, x[0] + (ref + 1.0) * 0.5 * span, atol=1e-12 * abs(span)):
        w = np.ones(n)
        w[0] = w[-1] = 0.5
        w *= (-1.0) ** np.arange(n)
        return w
    cap = abs(span) / 4.0 if span != 0.0 else 1.0
    w = np.ones(n)
    for j in range(n):
        w[j] = 1.0 / np.prod((x[j] - np.delete(x, j)) / cap)
    return w


def barycentric_matrix(
    x: NDArray[np.float64],
    xq: NDArray[np.float64],
    weights: NDArray[np.float64] | None = None,
) -> NDArray[np.float64]:
    """Dense interpolation matrix M with (M @ values) = interpolant at xq."""
    if weights is None:
        weights = barycentric_weights(x)
    xq = np.asarray(xq, dtype=float)
    diff = xq[:, None] - x[None, :]
    exact_rows, exact_cols = np.nonzero(np.abs(diff) < 1e-14)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = weights[None, :] / diff
    m = t / np.sum(t, axis=1, keepdims=True)
    for i, j in zip(exact_rows, exact_cols):
        m[i, :] = 0.0
        m[i, j] = 1.0
    return m


def barycentric_eval(
    x: NDArray[np.float64],
    values: NDArray[np.float64],
    xq: NDArray[np.float64] | float,
    weights: NDArray[np.float64] | None = None,
) -> NDArray[np.float64]:
    """Evaluate the polynomial interpolant of (x, values) at xq.

    Query points may sit slightly outside [x[0], x[-1]]; the interpolant is
    a global polynomial so mild extrapolation is well defined.
    """
    if weights is None:
        weights = barycentric_weights(x)
    xq_arr = np.atleast_1d(np.asarray(xq, dtype=float))
    num = np.zeros_like(xq_arr)
    den = np.zeros_like(xq_arr)
    exact = np.full(xq_arr.shape, -1, dtype=int)
    for j in range(x.size):
        diff = xq_arr - x[j]
        hit = np.abs(diff) < 1e-14
        exact[hit] = j
        t = weights[j] / np.where(hit, 1.0, diff)
        t[hit] = 0.0
        num += t * values[j]
        den += t
    out = num / den
    for i, j in enumerate(exact):
        if j >= 0:
            out[i] = values[j]
    if np.isscalar(xq):
        return float(out[0])
    return out


class ChebGrid:
    """CGL grid mapped onto [a, b] with differentiation and quadrature.

    The mapping is affine, so the reference matrices just pick up powers of
    the scale factor 2/(b-a).  Instances are cheap; heavy matrices are cached
    per node count at module level.
    """

    def __init__(self, n: int, a: float = -1.0, b: float = 1.0) -> None:
        if not b > a:
            raise ValueError("grid span must have b > a")
        self.n = int(n)
        self.a = float(a)
        self.b = float(b)
        self.s = cheb_nodes(self.n)  # reference nodes
        self.x = 0.5 * (a + b) + 0.5 * (b - a) * self.s
        self._scale = 2.0 / (b - a)

    # -- calculus -----------------------------------------------------------

    @property
    def D(self) -> NDArray[np.float64]:
        return _diff_matrix(self.n) * self._scale

    @property
    def D2(self) -> NDArray[np.float64]:
        return _diff2_matrix(self.n) * self._scale**2

    @property
    def weights(self) -> NDArray[np.float64]:
        return _cc_weights(self.n) / self._scale

    def integrate(self, values: NDArray[np.float64]) -> float:
        return float(self.weights @ np.asarray(values, dtype=float))

    # -- spectral mirror ----------------------------------------------------

    def to_coeffs(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        return nodal_to_coeffs(values)

    def from_coeffs(self, coeffs: NDArray[np.float64]) -> NDArray[np.float64]:
        return coeffs_to_nodal(coeffs)

    # -- interpolation ------------------------------------------------------

    def interp(self, values, xq):
        sq = (np.asarray(xq, dtype=float) - 0.5 * (self.a + self.b)) / (
            0.5 * (self.b - self.a)
        )
        return barycentric_eval(self.s, values, sq)

    def __repr__(self) -> str:  # pragma: no cover
        return f"ChebGrid(n={self.n}, span=[{self.a}, {self.b}])"
