"""Contact-angle evaluation at the line where the surface meets a wall.

The angle alpha is measured between the outward wall normal (the wall
function f has f < 0 in the fluid, so grad f points out of it) and the
upward interface normal.  For a surface z = zeta(x, y) the upward normal is
(-zeta_x, -zeta_y, 1)/sqrt(1+zeta_x^2+zeta_y^2), and

    cos(alpha) = (f_z - f_x zeta_x - f_y zeta_y)
                 / (|grad f| sqrt(1 + zeta_x^2 + zeta_y^2)).

Calibration cases: a flat surface at a vertical wall gives pi/2; a surface
rising along the wall (zeta_x = 1 at f = x - c) gives 3*pi/4; an
axisymmetric surface with zeta_r = tan(beta) at the cylinder wall gives
pi/2 + beta.  The value is invariant under rescaling f -> c*f for c > 0;
flipping the sign of f (putting the fluid on the wrong side) flips alpha to
pi - alpha, which is why the in-fluid sign convention matters.

Two routes to the same number are kept deliberately: the closed formula
above, and an explicit dot product of constructed unit normals.  Tests pin
them against each other so a sign slip in either cannot pass silently.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "contact_angle_formula",
    "contact_angle_normals",
    "contact_angle",
]


def contact_angle_formula(grad_f, zeta_x: float, zeta_y: float = 0.0) -> float:
    """Contact angle from wall-function gradient and surface slopes.

    grad_f is (f_x, f_z) in the plane or (f_x, f_y, f_z) in three
    dimensions, evaluated at the contact point, pointing out of the fluid.
    """
    g = np.asarray(grad_f, dtype=float)
    if g.shape == (2,):
        fx, fy, fz = g[0], 0.0, g[1]
    elif g.shape == (3,):
        fx, fy, fz = g
    else:
        raise ValueError("grad_f must be a 2- or 3-vector")
    gnorm = np.sqrt(fx * fx + fy * fy + fz * fz)
    if gnorm < 1e-12:
        raise ValueError("degenerate wall gradient at the contact point")
    snorm = np.sqrt(1.0 + zeta_x * zeta_x + zeta_y * zeta_y)
    c = (fz - fx * zeta_x - fy * zeta_y) / (gnorm * snorm)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def contact_angle_normals(grad_f, zeta_x: float, zeta_y: float = 0.0) -> float:
    """Same angle via explicit unit normals; independent arithmetic path."""
    g = np.asarray(grad_f, dtype=float)
    if g.shape == (2,):
        g = np.array([g[0], 0.0, g[1]])
    n_wall = g / np.linalg.norm(g)
    n_up = np.array([-zeta_x, -zeta_y, 1.0])
    n_up /= np.linalg.norm(n_up)
    return float(np.arccos(np.clip(n_wall @ n_up, -1.0, 1.0)))


def contact_angle(geometry, interface, side: str = "right") -> float:
    """Contact angle of an Interface against a container wall.

    The contact point is taken as the interface endpoint on the given side;
    the wall gradient is evaluated there.  Every solver in the package
    keeps its interface endpoints on the walls (the time stepper slaves
    its span to the contact heights), so the endpoint is the contact.
    """
    if geometry.kind == "axisym":
        r_c = geometry.radius
        z_c = interface.contact_height("wall")
        grad = geometry.wall_grad(r_c, z_c)
        return contact_angle_formula(grad, interface.contact_slope("wall"))
    idx = -1 if side == "right" else 0
    x_c = float(interface.x[idx])
    z_c = interface.contact_height(side)
    grad = geometry.wall_grad(x_c, z_c, side)
    return contact_angle_formula(grad, interface.contact_slope(side))
