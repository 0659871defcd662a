"""Static planar meniscus by damped-Newton collocation with free contact points.

One solver covers all three planar containers.  The surface is a graph
z = eta(x) on [x_l, x_r]; for vertical walls the span is fixed, for the
wedge and the circular tube the contact abscissas join the unknowns and
two endpoint-on-wall closures complete the system.  The Young-Laplace
equation is collocated at interior Chebyshev nodes, the contact-angle
condition fills the endpoint rows in cosine form, and the enclosed
cross-section area fixes the multiplier lam.

The Newton direction comes from an analytic Jacobian.  Finite differences
are not an option here: the spectral second-derivative block has norm
O(n^4 / L^2), so difference truncation error swamps the residual long
before convergence, which is exactly how MINPACK's hybrd stalls on the
wedge.  Only the O(1) wall-geometry sensitivities (wall-gradient direction,
wetted-wall area term) are differenced, centrally, where truncation is
harmless.

Continuation runs in the contact angle starting from the "neutral" angle
of the flat surface (pi/2 for vertical walls, pi/2 + half_angle for the
wedge, arccos(fill/R) for the tube), where the flat state solves the
problem exactly.
"""

from __future__ import annotations

import numpy as np

from ..core.contact import contact_angle_formula
from ..core.geometry import CircularChannel, RectangularChannel, WedgeChannel
from ..core.grid import ChebGrid, cheb_diff, cheb_diff2, cheb_nodes, clenshaw_curtis_weights
from ..core.interface import planar_curvature
from ..core.newton import damped_newton
from ..core.params import FluidParams
from ..errors import MeniscusConvergenceError, ParametrizationError
from .solution import MeniscusSolution

__all__ = ["solve_meniscus_planar"]

_MAX_ANGLE_STEP = 0.15
_MIN_ANGLE_STEP = 1e-4
_FD_GEOM = 1e-6


def _green_wall_term(theta: float) -> float:
    return 0.5 * theta + 0.25 * np.sin(2.0 * theta)


def _contact_thetas(geometry: CircularChannel, xl, zl, xr, zr):
    th_r = np.arctan2(zr - geometry.centre_z, xr)
    th_l = np.arctan2(zl - geometry.centre_z, xl)
    if th_l < 0.0:
        th_l += 2.0 * np.pi
    return th_l, th_r


def _wall_area_part(geometry, xl, xr, zl, zr) -> float:
    """Area contribution of the wetted wall, as a function of the contact
    points alone.

    Vertical strips below z = 0 work for the rectangle and wedge; the
    circular tube bulges past the contact verticals, so there the term is
    the boundary integral of x dz along the wetted arc, with the surface
    integral of x deta already folded into the quadrature part by parts.
    """
    if isinstance(geometry, RectangularChannel):
        return geometry.depth * (xr - xl)
    if isinstance(geometry, WedgeChannel):
        cot_b = 1.0 / np.tan(geometry.half_angle)
        return geometry.depth * (xr - xl) - 0.5 * cot_b * (xl * xl + xr * xr)
    if isinstance(geometry, CircularChannel):
        th_l, th_r = _contact_thetas(geometry, xl, zl, xr, zr)
        arc = geometry.radius**2 * (
            _green_wall_term(th_l - 2.0 * np.pi) - _green_wall_term(th_r)
        )
        return xl * zl - xr * zr - arc
    raise TypeError(f"unsupported planar geometry {type(geometry).__name__}")


def _total_area(geometry, xl, xr, eta, w_ref) -> float:
    return 0.5 * (xr - xl) * (w_ref @ eta) + _wall_area_part(
        geometry, xl, xr, eta[0], eta[-1]
    )


def _angle_cos(geometry, side, xq, zq, m) -> float:
    g = geometry.wall_grad(xq, zq, side)
    gn = np.hypot(g[0], g[1])
    return (g[1] - g[0] * m) / (gn * np.sqrt(1.0 + m * m))


def _flat_contact_angle(geometry) -> float:
    xr0 = geometry.flat_span()[1]
    return contact_angle_formula(geometry.wall_grad(xr0, 0.0, "right"), 0.0)


def _check_angle_range(geometry, alpha_s: float) -> None:
    if alpha_s <= 0.0 or alpha_s >= np.pi:
        raise ParametrizationError(
            "tangent contact (alpha_s = 0 or pi) has an infinite graph slope; "
            "use the wall-aligned solver in meniscus.wetting"
        )
    # finite slope requires |cos alpha| below the wall normal's horizontal part
    xr0 = geometry.flat_span()[1]
    g = geometry.wall_grad(xr0, 0.0, "right")
    nx = abs(g[0]) / np.hypot(g[0], g[1])
    if abs(np.cos(alpha_s)) >= nx - 1e-12:
        raise ParametrizationError(
            f"contact angle {alpha_s:.4f} is outside the graph-representable "
            f"range for this wall orientation"
        )


def solve_meniscus_planar(
    geometry,
    params: FluidParams,
    alpha_s: float,
    volume: float | None = None,
    n: int = 64,
) -> MeniscusSolution:
    """Solve the planar static meniscus; see module docstring for method."""
    _check_angle_range(geometry, alpha_s)
    bond = params.bond
    row_scale = 1.0 / max(1.0, bond)
    free_ends = not isinstance(geometry, RectangularChannel)

    s_ref = cheb_nodes(n)
    D_ref = cheb_diff(n)
    D2_ref = cheb_diff2(n)
    w_ref = clenshaw_curtis_weights(n)

    xl0, xr0 = geometry.flat_span()
    span0 = xr0 - xl0
    target_area = (
        volume
        if volume is not None
        else _total_area(geometry, xl0, xr0, np.zeros(n), w_ref)
    )

    def unpack(vec):
        eta, lam = vec[:n], vec[n]
        if free_ends:
            return eta, lam, vec[n + 1], vec[n + 2]
        return eta, lam, xl0, xr0

    def residual(vec, alpha):
        eta, lam, xl, xr = unpack(vec)
        L = xr - xl
        if not np.isfinite(L) or L < 0.05 * span0:
            return np.full_like(vec, 1e6)
        eta_x = (2.0 / L) * (D_ref @ eta)
        eta_xx = (4.0 / L**2) * (D2_ref @ eta)
        kappa = planar_curvature(eta_x, eta_xx)
        out = np.empty_like(vec)
        out[1 : n - 1] = row_scale * (bond * (eta[1 : n - 1] - lam) - kappa[1 : n - 1])
        for row, idx, side, xc in ((0, 0, "left", xl), (n - 1, n - 1, "right", xr)):
            out[row] = _angle_cos(geometry, side, xc, eta[idx], eta_x[idx]) - np.cos(alpha)
        out[n] = _total_area(geometry, xl, xr, eta, w_ref) - target_area
        if free_ends:
            out[n + 1] = geometry.wall_fn(xl, eta[0], "left")
            out[n + 2] = geometry.wall_fn(xr, eta[-1], "right")
        return out

    def jacobian(vec, alpha):
        eta, lam, xl, xr = unpack(vec)
        L = xr - xl
        u = 2.0 / L
        eta_x = u * (D_ref @ eta)
        eta_xx = u * u * (D2_ref @ eta)
        s2 = 1.0 + eta_x**2
        s3 = s2**1.5
        J = np.zeros((vec.size, vec.size))

        dk_deta = (u * u / s3)[:, None] * D2_ref - (
            3.0 * eta_xx * eta_x / (s2 * s3) * u
        )[:, None] * D_ref
        inter = slice(1, n - 1)
        J[inter, :n] = -row_scale * dk_deta[inter]
        J[inter, inter] += row_scale * bond * np.eye(n - 2)
        J[inter, n] = -row_scale * bond
        if free_ends:
            dk_dxl = (eta_xx / (L * s3)) * (2.0 - 3.0 * eta_x**2 / s2)
            J[inter, n + 1] = -row_scale * dk_dxl[inter]
            J[inter, n + 2] = row_scale * dk_dxl[inter]

        for row, idx, side, xc, col_x in (
            (0, 0, "left", xl, n + 1),
            (n - 1, n - 1, "right", xr, n + 2),
        ):
            g = geometry.wall_grad(xc, eta[idx], side)
            gn = np.hypot(g[0], g[1])
            m = eta_x[idx]
            dc_dm = -(g[0] + g[1] * m) / (gn * s3[idx])
            J[row, :n] = dc_dm * u * D_ref[idx]
            h = _FD_GEOM * max(1.0, abs(xc), abs(eta[idx]))
            J[row, idx] += (
                _angle_cos(geometry, side, xc, eta[idx] + h, m)
                - _angle_cos(geometry, side, xc, eta[idx] - h, m)
            ) / (2.0 * h)
            if free_ends:
                J[row, n + 1] += dc_dm * m / L
                J[row, n + 2] -= dc_dm * m / L
                J[row, col_x] += (
                    _angle_cos(geometry, side, xc + h, eta[idx], m)
                    - _angle_cos(geometry, side, xc - h, eta[idx], m)
                ) / (2.0 * h)

        J[n, :n] = 0.5 * L * w_ref
        h = _FD_GEOM * max(1.0, abs(xl), abs(xr))
        wall = lambda a, b, c, d: _wall_area_part(geometry, a, b, c, d)
        J[n, 0] += (wall(xl, xr, eta[0] + h, eta[-1]) - wall(xl, xr, eta[0] - h, eta[-1])) / (2.0 * h)
        J[n, n - 1] += (wall(xl, xr, eta[0], eta[-1] + h) - wall(xl, xr, eta[0], eta[-1] - h)) / (2.0 * h)
        if free_ends:
            surf = 0.5 * (w_ref @ eta)
            J[n, n + 1] = -surf + (
                wall(xl + h, xr, eta[0], eta[-1]) - wall(xl - h, xr, eta[0], eta[-1])
            ) / (2.0 * h)
            J[n, n + 2] = surf + (
                wall(xl, xr + h, eta[0], eta[-1]) - wall(xl, xr - h, eta[0], eta[-1])
            ) / (2.0 * h)
            g_l = geometry.wall_grad(xl, eta[0], "left")
            g_r = geometry.wall_grad(xr, eta[-1], "right")
            J[n + 1, n + 1] = g_l[0]
            J[n + 1, 0] = g_l[1]
            J[n + 2, n + 2] = g_r[0]
            J[n + 2, n - 1] = g_r[1]
        return J

    size = n + 3 if free_ends else n + 1
    vec = np.zeros(size)
    if free_ends:
        vec[n + 1], vec[n + 2] = xl0, xr0

    alpha0 = _flat_contact_angle(geometry)
    direction = np.sign(alpha_s - alpha0)
    step = _MAX_ANGLE_STEP
    current = alpha0
    while abs(alpha_s - current) > 1e-15:
        alpha = current + direction * min(step, abs(alpha_s - current))
        x, norm, ok = damped_newton(
            lambda v: residual(v, alpha), vec, jac=lambda v: jacobian(v, alpha)
        )
        if ok:
            vec, current = x, alpha
            step = min(1.5 * step, _MAX_ANGLE_STEP)
            continue
        step *= 0.5
        if step < _MIN_ANGLE_STEP:
            raise MeniscusConvergenceError(
                f"meniscus Newton failed at continuation angle {alpha:.4f}", norm
            )

    eta, lam, xl, xr = unpack(vec)
    grid = ChebGrid(n, a=float(xl), b=float(xr))
    slope = grid.D @ eta
    second = grid.D2 @ eta
    kappa = planar_curvature(slope, second)
    resid_final = residual(vec, alpha_s)
    yl_resid = np.max(np.abs(resid_final[1 : n - 1]))

    a_left = contact_angle_formula(geometry.wall_grad(xl, eta[0], "left"), slope[0])
    a_right = contact_angle_formula(geometry.wall_grad(xr, eta[-1], "right"), slope[-1])

    return MeniscusSolution(
        bond=bond,
        alpha_s=alpha_s,
        kind="planar",
        grid=grid,
        height=eta.copy(),
        slope=slope,
        second=second,
        lam=float(lam),
        kappa_contact=float(kappa[-1]),
        alpha_achieved=(float(a_left), float(a_right)),
        residual_norm=float(max(yl_resid, abs(resid_final[n]), np.max(np.abs(resid_final[0])))),
        volume_error=float(abs(resid_final[n])),
        contact_points=((float(xl), float(eta[0])), (float(xr), float(eta[-1]))),
        geometry=geometry,
    )
