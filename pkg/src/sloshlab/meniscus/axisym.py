"""Static axisymmetric meniscus in the upright cylinder.

Same damped-Newton collocation structure as the planar solver, with the
axisymmetric mean curvature and an r-weighted volume constraint.  The
profile lives on the full diameter with an even node count, so no grid
point sits on the axis and the hoop term zeta_r/r stays finite; symmetry
of the equations then delivers the symmetric solution without imposing a
regularity row explicitly.  The Jacobian is analytic throughout: the
cylinder wall gradient (2r, 0) is independent of height, so unlike the
planar case no wall-geometry differencing is needed at all.
"""

from __future__ import annotations

import numpy as np
from scipy.special import roots_legendre

from ..core.contact import contact_angle_formula
from ..core.geometry import RightCircularCylinder
from ..core.grid import ChebGrid, barycentric_matrix
from ..core.interface import axisym_curvature
from ..core.newton import damped_newton
from ..core.params import FluidParams
from ..errors import MeniscusConvergenceError, ParametrizationError
from .solution import MeniscusSolution

__all__ = ["solve_meniscus_axisym"]

_MAX_ANGLE_STEP = 0.15
_MIN_ANGLE_STEP = 1e-4


def solve_meniscus_axisym(
    geometry: RightCircularCylinder,
    params: FluidParams,
    alpha_s: float,
    volume: float | None = None,
    n: int = 64,
) -> MeniscusSolution:
    if alpha_s <= 0.0 or alpha_s >= np.pi:
        raise ParametrizationError(
            "tangent contact has an infinite graph slope; "
            "use the wall-aligned solver in meniscus.wetting"
        )
    if n % 2:
        raise ValueError("node count must be even so the axis r = 0 is not a node")
    bond = params.bond
    row_scale = 1.0 / max(1.0, bond)
    a = geometry.radius

    grid = ChebGrid(n, a=-a, b=a)
    r = grid.x
    D, D2 = grid.D, grid.D2

    # volume functional: int_0^a eta r dr via Gauss-Legendre on the
    # interpolated profile; the interpolant is the grid polynomial, so
    # this is exact for it and has no |r| kink issues
    gl_x, gl_w = roots_legendre(n)
    r_gl = 0.5 * a * (gl_x + 1.0)
    vol_row = (gl_w * r_gl * 0.5 * a) @ barycentric_matrix(r, r_gl)

    if volume is None:
        target_excess = 0.0
    else:
        target_excess = (volume - np.pi * a**2 * geometry.depth) / (2.0 * np.pi)

    def residual(vec, alpha):
        eta, lam = vec[:n], vec[n]
        eta_r = D @ eta
        eta_rr = D2 @ eta
        kappa = axisym_curvature(r, eta_r, eta_rr)
        out = np.empty_like(vec)
        out[1 : n - 1] = row_scale * (bond * (eta[1 : n - 1] - lam) - kappa[1 : n - 1])
        for row, idx in ((0, 0), (n - 1, n - 1)):
            g = geometry.wall_grad(r[idx], eta[idx])
            gn = np.hypot(g[0], g[1])
            c = (g[1] - g[0] * eta_r[idx]) / (gn * np.sqrt(1.0 + eta_r[idx] ** 2))
            out[row] = c - np.cos(alpha)
        out[n] = vol_row @ eta - target_excess
        return out

    def jacobian(vec):
        eta = vec[:n]
        eta_r = D @ eta
        eta_rr = D2 @ eta
        s2 = 1.0 + eta_r**2
        s3 = s2**1.5
        J = np.zeros((n + 1, n + 1))
        dk_deta = (
            (1.0 / s3)[:, None] * D2
            - (3.0 * eta_rr * eta_r / (s2 * s3))[:, None] * D
            + (1.0 / (r * s3))[:, None] * D
        )
        inter = slice(1, n - 1)
        J[inter, :n] = -row_scale * dk_deta[inter]
        J[inter, inter] += row_scale * bond * np.eye(n - 2)
        J[inter, n] = -row_scale * bond
        for row, idx in ((0, 0), (n - 1, n - 1)):
            g = geometry.wall_grad(r[idx], eta[idx])
            gn = np.hypot(g[0], g[1])
            m = eta_r[idx]
            J[row, :n] = -(g[0] + g[1] * m) / (gn * s3[idx]) * D[idx]
        J[n, :n] = vol_row
        return J

    vec = np.zeros(n + 1)
    direction = np.sign(alpha_s - np.pi / 2)
    step = _MAX_ANGLE_STEP
    current = np.pi / 2
    while abs(alpha_s - current) > 1e-15:
        alpha = current + direction * min(step, abs(alpha_s - current))
        x, norm, ok = damped_newton(lambda v: residual(v, alpha), vec, jac=jacobian)
        if ok:
            vec, current = x, alpha
            step = min(1.5 * step, _MAX_ANGLE_STEP)
            continue
        step *= 0.5
        if step < _MIN_ANGLE_STEP:
            raise MeniscusConvergenceError(
                f"axisymmetric meniscus Newton failed at angle {alpha:.4f}", norm
            )

    eta, lam = vec[:n], float(vec[n])
    slope = D @ eta
    second = D2 @ eta
    kappa = axisym_curvature(r, slope, second)
    resid_final = residual(vec, alpha_s)
    yl_resid = np.max(np.abs(resid_final[1 : n - 1]))

    a_left = contact_angle_formula(geometry.wall_grad(r[0], eta[0]), slope[0])
    a_right = contact_angle_formula(geometry.wall_grad(r[-1], eta[-1]), slope[-1])

    return MeniscusSolution(
        bond=bond,
        alpha_s=alpha_s,
        kind="axisym",
        grid=grid,
        height=eta.copy(),
        slope=slope,
        second=second,
        lam=lam,
        kappa_contact=float(kappa[-1]),
        alpha_achieved=(float(a_left), float(a_right)),
        residual_norm=float(max(yl_resid, abs(resid_final[n]), abs(resid_final[0]))),
        volume_error=float(abs(resid_final[n])),
        contact_points=((-a, float(eta[0])), (a, float(eta[-1]))),
        geometry=geometry,
    )
