"""Damped Newton iteration for square nonlinear systems.

scipy's hybrd wrapper builds its Jacobian by forward differences, and for
spectral collocation residuals that is fatal: the difference truncation
error, multiplied by the O(n^4) norm of the second-derivative block, can
exceed the residual itself, so the solver stalls at a perfectly regular
point.  This Newton accepts an analytic Jacobian callback and backtracks
on the 2-norm of the residual, which an exact Jacobian always decreases.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["damped_newton"]

_SQRT_EPS = float(np.sqrt(np.finfo(float).eps))


def _forward_difference_jacobian(fun, x: np.ndarray, f0: np.ndarray) -> np.ndarray:
    J = np.empty((f0.size, x.size))
    for j in range(x.size):
        h = _SQRT_EPS * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += h
        J[:, j] = (fun(xp) - f0) / h
    return J


def damped_newton(
    fun: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    jac: Callable[[np.ndarray], np.ndarray] | None = None,
    tol: float = 1e-10,
    max_iter: int = 40,
) -> tuple[np.ndarray, float, bool]:
    """Solve fun(x) = 0; returns (x, max-abs residual, converged flag).

    Without ``jac`` the Jacobian comes from forward differences, which is
    adequate only while the residual's own derivatives stay moderate.
    """
    x = np.array(x0, dtype=float, copy=True)
    f = fun(x)
    norm2 = float(np.linalg.norm(f))
    for _ in range(max_iter):
        norm_inf = float(np.max(np.abs(f)))
        if norm_inf < tol:
            return x, norm_inf, True
        J = jac(x) if jac is not None else _forward_difference_jacobian(fun, x, f)
        try:
            dx = np.linalg.solve(J, -f)
        except np.linalg.LinAlgError:
            dx = np.linalg.lstsq(J, -f, rcond=None)[0]
        t = 1.0
        while True:
            f_trial = fun(x + t * dx)
            trial2 = float(np.linalg.norm(f_trial))
            if trial2 < (1.0 - 1e-4 * t) * norm2:
                break
            t *= 0.5
            if t < 2.0**-12:
                return x, norm_inf, False
        x = x + t * dx
        f, norm2 = f_trial, trial2
    norm_inf = float(np.max(np.abs(f)))
    return x, norm_inf, norm_inf < tol
