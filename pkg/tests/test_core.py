"""Grid machinery, geometry descriptions, curvature and contact-angle ops."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sloshlab.core import (
    ChebGrid,
    CircularChannel,
    FluidParams,
    ImpulsiveAcceleration,
    Interface,
    RectangularChannel,
    RightCircularCylinder,
    SinusoidalForcing,
    WedgeChannel,
    ZeroForcing,
    axisym_curvature,
    cheb_nodes,
    clenshaw_curtis_weights,
    contact_angle,
    contact_angle_formula,
    contact_angle_normals,
    planar_curvature,
    wall_normal,
)
from sloshlab.core.grid import barycentric_eval, cheb_diff, cheb_diff2


# ---------------------------------------------------------------- grid


def test_nodes_ascending_with_endpoints():
    x = cheb_nodes(9)
    assert x[0] == -1.0 and x[-1] == 1.0
    assert np.all(np.diff(x) > 0)


def test_differentiation_exact_on_polynomials():
    n = 16
    x = cheb_nodes(n)
    D = cheb_diff(n)
    D2 = cheb_diff2(n)
    p = 3 * x**5 - x**3 + 2 * x
    dp = 15 * x**4 - 3 * x**2 + 2
    d2p = 60 * x**3 - 6 * x
    assert np.allclose(D @ p, dp, atol=1e-10)
    assert np.allclose(D2 @ p, d2p, atol=1e-9)


def test_quadrature_weights_integrate_polynomials():
    n = 12
    x = cheb_nodes(n)
    w = clenshaw_curtis_weights(n)
    assert np.isclose(w @ np.ones(n), 2.0, atol=1e-13)
    assert np.isclose(w @ x**2, 2.0 / 3.0, atol=1e-13)
    assert np.isclose(w @ x**8, 2.0 / 9.0, atol=1e-13)


def test_spectral_roundtrip_is_identity():
    g = ChebGrid(33)
    v = np.exp(g.x) * np.sin(3 * g.x)
    assert np.allclose(g.from_coeffs(g.to_coeffs(v)), v, atol=1e-12)


def test_mapped_grid_derivative_and_integral():
    g = ChebGrid(24, a=0.0, b=3.0)
    v = g.x**3
    assert np.allclose(g.D @ v, 3 * g.x**2, atol=1e-9)
    assert np.isclose(g.integrate(v), 81.0 / 4.0, atol=1e-10)


def test_barycentric_interpolation_and_extrapolation():
    g = ChebGrid(30)
    v = np.cos(2.0 * g.x)
    xq = np.array([-0.73, 0.11, 0.9999])
    assert np.allclose(g.interp(v, xq), np.cos(2.0 * xq), atol=1e-12)
    # mild extrapolation just past the endpoint, used by the circular-channel
    # contact tracker; the interpolant is a polynomial so this stays accurate
    assert np.isclose(
        barycentric_eval(g.x, v, np.array([1.002]))[0], np.cos(2.004), atol=1e-8
    )


# ---------------------------------------------------------------- curvature


def test_flat_surface_has_zero_curvature():
    zx = np.zeros(5)
    assert np.allclose(planar_curvature(zx, zx), 0.0)


def test_parabola_curvature_at_vertex():
    # zeta = x^2/2: curvature 1 at the vertex, convex-up positive
    g = ChebGrid(20)
    zeta = 0.5 * g.x**2
    kappa = planar_curvature(g.D @ zeta, g.D2 @ zeta)
    i0 = np.argmin(np.abs(g.x))
    assert kappa[i0] > 0
    assert np.isclose(kappa[i0], (1 + g.x[i0] ** 2) ** -1.5, atol=1e-9)


def test_hemispherical_bowl_curvature_is_two_over_radius():
    # lower half of a sphere of radius R, apex at the bottom: kappa = 2/R
    R = 2.0
    g = ChebGrid(40, a=-0.6 * R, b=0.6 * R)  # even count, no r = 0 node
    r = g.x
    zeta = -np.sqrt(R**2 - r**2)
    kappa = axisym_curvature(r, g.D @ zeta, g.D2 @ zeta)
    assert np.allclose(kappa, 2.0 / R, atol=1e-7)


def test_axisym_curvature_rejects_axis_node():
    with pytest.raises(ValueError):
        axisym_curvature(np.array([0.0, 0.5]), np.zeros(2), np.zeros(2))


# ---------------------------------------------------------------- contact angle


def test_flat_surface_vertical_wall_is_right_angle():
    assert np.isclose(contact_angle_formula((1.0, 0.0), 0.0), np.pi / 2)


def test_surface_rising_along_right_wall():
    # zeta_x = 1 at a right vertical wall: fluid climbs, angle opens to 3pi/4
    assert np.isclose(contact_angle_formula((1.0, 0.0), 1.0), 0.75 * np.pi)


def test_axisym_slope_sets_angle_offset():
    beta = 0.3
    alpha = contact_angle_formula((2.0, 0.0), np.tan(beta))
    assert np.isclose(alpha, np.pi / 2 + beta, atol=1e-12)


@given(
    c=st.floats(min_value=1e-3, max_value=1e3),
    zx=st.floats(min_value=-5, max_value=5),
    fz=st.floats(min_value=-2, max_value=2),
)
@settings(max_examples=200, deadline=None)
def test_angle_invariant_under_positive_wall_rescaling(c, zx, fz):
    a1 = contact_angle_formula((1.0, fz), zx)
    a2 = contact_angle_formula((c * 1.0, c * fz), zx)
    assert abs(a1 - a2) < 1e-9


@given(
    fx=st.floats(min_value=-3, max_value=3),
    fz=st.floats(min_value=-3, max_value=3),
    zx=st.floats(min_value=-5, max_value=5),
    zy=st.floats(min_value=-5, max_value=5),
)
@settings(max_examples=200, deadline=None)
def test_formula_and_normal_routes_agree(fx, fz, zx, zy):
    if fx * fx + fz * fz < 1e-6:
        return
    a1 = contact_angle_formula((fx, 0.0, fz), zx, zy)
    a2 = contact_angle_normals((fx, 0.0, fz), zx, zy)
    # both routes agree to roundoff in the cosine; near 0 or pi the arccos
    # map amplifies that by 1/sin(alpha), so the bound must follow suit
    tol = 1e-10 + 2e-15 / max(np.sin(0.5 * (a1 + a2)), 1e-12)
    assert abs(a1 - a2) < tol


def test_sign_flip_of_wall_function_reflects_angle():
    a = contact_angle_formula((1.0, 0.2), 0.7)
    b = contact_angle_formula((-1.0, -0.2), 0.7)
    assert np.isclose(a + b, np.pi, atol=1e-12)


def test_contact_angle_of_interface_against_walls():
    geo = RectangularChannel(half_width=1.0, depth=1.0)
    g = ChebGrid(24)
    surf = Interface(g, 0.1 * g.x, kind="planar")  # uniform tilt
    # slope +0.1 at the right wall climbs: angle > pi/2 there, < pi/2 on the left
    a_r = contact_angle(geo, surf, "right")
    a_l = contact_angle(geo, surf, "left")
    assert np.isclose(a_r, np.pi / 2 + np.arctan(0.1), atol=1e-9)
    assert np.isclose(a_l, np.pi / 2 - np.arctan(0.1), atol=1e-9)


def test_contact_angle_on_cylinder_wall():
    geo = RightCircularCylinder(radius=1.0, depth=1.0)
    g = ChebGrid(24, a=-1.0, b=1.0)
    beta = 0.25
    surf = Interface(g, np.tan(beta) * 0.5 * g.x**2, kind="axisym")
    assert np.isclose(
        contact_angle(geo, surf, "wall"), np.pi / 2 + np.arctan(np.tan(beta)), atol=1e-8
    )


# ---------------------------------------------------------------- geometry


def test_wedge_outward_normal_components():
    beta = np.pi / 6
    geo = WedgeChannel(half_angle=beta, depth=1.0)
    n = wall_normal(geo, geo.wall_x(0.0, "right"), 0.0, "right")
    assert np.allclose(n, [np.cos(beta), -np.sin(beta)], atol=1e-12)
    n_l = wall_normal(geo, geo.wall_x(0.0, "left"), 0.0, "left")
    assert np.allclose(n_l, [-np.cos(beta), -np.sin(beta)], atol=1e-12)


def test_wall_function_negative_inside_fluid():
    rect = RectangularChannel(1.0, 1.0)
    assert rect.wall_fn(0.3, -0.2, "right") < 0
    assert rect.wall_fn(0.3, -0.2, "left") < 0
    wedge = WedgeChannel(0.4, 1.0)
    assert wedge.wall_fn(0.0, -0.5, "right") < 0
    circ = CircularChannel(1.0, 0.0)
    assert circ.wall_fn(0.0, -0.5) < 0
    assert circ.wall_fn(1.5, 0.0) > 0


def test_circle_wall_graph_derivatives_match_finite_differences():
    circ = CircularChannel(radius=1.0, fill_level=0.3)
    z0, h = -0.2, 1e-5
    d_fd = (circ.wall_x(z0 + h) - circ.wall_x(z0 - h)) / (2 * h)
    d2_fd = (circ.wall_x(z0 + h) - 2 * circ.wall_x(z0) + circ.wall_x(z0 - h)) / h**2
    assert np.isclose(circ.wall_x_dz(z0), d_fd, atol=1e-8)
    assert np.isclose(circ.wall_x_dzz(z0), d2_fd, atol=1e-4)


def test_circle_flat_span_touches_wall():
    circ = CircularChannel(radius=2.0, fill_level=0.5)
    xl, xr = circ.flat_span()
    assert np.isclose(circ.wall_fn(xr, 0.0), 0.0, atol=1e-12)
    assert np.isclose(circ.wall_fn(xl, 0.0), 0.0, atol=1e-12)


def test_wetted_arc_points_lie_on_wall_with_unit_outward_normals():
    circ = CircularChannel(radius=1.5, fill_level=-0.4)
    pts, normals = circ.wetted_arc_points(40)
    assert np.allclose([circ.wall_fn(x, z) for x, z in pts], 0.0, atol=1e-12)
    assert np.allclose(np.linalg.norm(normals, axis=1), 1.0, atol=1e-12)
    assert np.all(pts[:, 1] < 0)  # wetted arc sits below the surface datum
    # outward means aligned with the wall-function gradient
    grads = np.array([circ.wall_grad(x, z) for x, z in pts])
    assert np.all(np.sum(grads * normals, axis=1) > 0)


def test_geometry_validation():
    with pytest.raises(ValueError):
        RectangularChannel(half_width=-1.0)
    with pytest.raises(ValueError):
        WedgeChannel(half_angle=2.0, depth=1.0)
    with pytest.raises(ValueError):
        CircularChannel(radius=1.0, fill_level=1.0)


# ---------------------------------------------------------------- params


def test_fluid_params_validation():
    FluidParams(bond=10.0)
    with pytest.raises(ValueError):
        FluidParams(bond=0.0)
    with pytest.raises(ValueError):
        FluidParams(bond=1.0, gravity_dir=(0.0, 0.0, -2.0))
    with pytest.raises(ValueError):
        FluidParams(bond=1.0, ambient_pressure=5.0)


def test_forcing_values():
    f = SinusoidalForcing(amplitude=0.2, omega=3.0)
    assert np.allclose(f.acceleration(0.0), [0.0, 0.0])
    assert np.isclose(f.acceleration(np.pi / 6)[0], 0.2)
    imp = ImpulsiveAcceleration(amplitude=1.5)
    assert np.allclose(imp.acceleration(-1e-9), [0.0, 0.0])
    assert np.allclose(imp.acceleration(0.0), [1.5, 0.0])
    z = ZeroForcing()
    assert np.allclose(z.acceleration(10.0), [0.0, 0.0])
    # forcing potential measured with the x-coordinate: a(t) . x
    assert np.isclose(f.potential(np.pi / 6, x=2.0, z=0.3), 0.4)
