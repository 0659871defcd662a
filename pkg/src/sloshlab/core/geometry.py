"""Container geometries.

Four closed containers are supported, all described in nondimensional units
with the mean free surface at z = 0:

* RectangularChannel -- planar channel, vertical walls at x = +-half_width,
  flat bottom at z = -depth.
* WedgeChannel -- planar wedge with apex at (0, -depth) on the z-axis and
  straight walls tilted half_angle away from the vertical.  The walls are
  flat but not vertical, so the contact abscissa moves when the surface
  rises; the wall-normal direction is constant along each wall.
* CircularChannel -- planar container whose cross-section is a full circle
  (a horizontal tube), partially filled.  fill_level is the height of the
  circle centre *below* the surface datum, i.e. the centre sits at
  (0, -fill_level); fill_level = 0 is the half-full tube whose static
  pi/2 interface is the flat diameter.
* RightCircularCylinder -- upright cylinder of given radius and depth for
  axisymmetric and azimuthal-mode work.

Each wall is described implicitly by a scalar function f with f < 0 inside
the fluid, so grad f points out of the fluid on the wall.  The contact-angle
operator consumes f and grad f directly; `wall_normal` is the normalised
gradient.  Planar shapes also expose the right/left wall as a graph
x = X_w(z) with derivatives, which is what the contact-point tracker and the
curved-wall drift analysis need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RectangularChannel",
    "WedgeChannel",
    "CircularChannel",
    "RightCircularCylinder",
    "wall_normal",
]

_SIDES = ("left", "right")


def _check_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class RectangularChannel:
    """Planar channel with vertical walls at x = +-half_width."""

    half_width: float = 1.0
    depth: float = 1.0

    kind = "planar"

    def __post_init__(self) -> None:
        _check_positive("half_width", self.half_width)
        _check_positive("depth", self.depth)

    def wall_fn(self, x: float, z: float, side: str = "right") -> float:
        if side == "right":
            return x - self.half_width
        if side == "left":
            return -x - self.half_width
        raise ValueError(f"unknown side {side!r}")

    def wall_grad(self, x: float, z: float, side: str = "right") -> np.ndarray:
        if side == "right":
            return np.array([1.0, 0.0])
        if side == "left":
            return np.array([-1.0, 0.0])
        raise ValueError(f"unknown side {side!r}")

    # wall as a graph x = X_w(z); constant for a vertical wall
    def wall_x(self, z: float, side: str = "right") -> float:
        return self.half_width if side == "right" else -self.half_width

    def wall_x_dz(self, z: float, side: str = "right") -> float:
        return 0.0

    def wall_x_dzz(self, z: float, side: str = "right") -> float:
        return 0.0

    def flat_span(self) -> tuple[float, float]:
        return (-self.half_width, self.half_width)


@dataclass(frozen=True)
class WedgeChannel:
    """Planar wedge, apex at (0, -depth), walls tilted half_angle from vertical."""

    half_angle: float
    depth: float

    kind = "planar"

    def __post_init__(self) -> None:
        _check_positive("depth", self.depth)
        if not 0.0 < self.half_angle < 0.5 * np.pi:
            raise ValueError("half_angle must lie in (0, pi/2)")

    def wall_fn(self, x: float, z: float, side: str = "right") -> float:
        b = self.half_angle
        if side == "right":
            return x * np.cos(b) - (z + self.depth) * np.sin(b)
        if side == "left":
            return -x * np.cos(b) - (z + self.depth) * np.sin(b)
        raise ValueError(f"unknown side {side!r}")

    def wall_grad(self, x: float, z: float, side: str = "right") -> np.ndarray:
        b = self.half_angle
        if side == "right":
            return np.array([np.cos(b), -np.sin(b)])
        if side == "left":
            return np.array([-np.cos(b), -np.sin(b)])
        raise ValueError(f"unknown side {side!r}")

    def wall_x(self, z: float, side: str = "right") -> float:
        x = (z + self.depth) * np.tan(self.half_angle)
        return x if side == "right" else -x

    def wall_x_dz(self, z: float, side: str = "right") -> float:
        t = np.tan(self.half_angle)
        return t if side == "right" else -t

    def wall_x_dzz(self, z: float, side: str = "right") -> float:
        return 0.0

    def flat_span(self) -> tuple[float, float]:
        x = self.depth * np.tan(self.half_angle)
        return (-x, x)


@dataclass(frozen=True)
class CircularChannel:
    """Partially filled horizontal tube of circular cross-section.

    The circle centre sits at (0, -fill_level) so the flat fill surface is
    z = 0.  fill_level = 0 gives the half-full tube: contact points at
    (+-radius, 0) where the wall is locally vertical but curved.
    """

    radius: float = 1.0
    fill_level: float = 0.0

    kind = "planar"

    def __post_init__(self) -> None:
        _check_positive("radius", self.radius)
        if not abs(self.fill_level) < self.radius:
            raise ValueError("fill_level must satisfy |fill_level| < radius")

    @property
    def centre_z(self) -> float:
        return -self.fill_level

    def wall_fn(self, x: float, z: float, side: str = "right") -> float:
        zc = z - self.centre_z
        return x * x + zc * zc - self.radius**2

    def wall_grad(self, x: float, z: float, side: str = "right") -> np.ndarray:
        zc = z - self.centre_z
        return np.array([2.0 * x, 2.0 * zc])

    def wall_x(self, z: float, side: str = "right") -> float:
        zc = z - self.centre_z
        arg = self.radius**2 - zc * zc
        if arg <= 0.0:
            raise ValueError("height outside the tube")
        x = np.sqrt(arg)
        return x if side == "right" else -x

    def wall_x_dz(self, z: float, side: str = "right") -> float:
        zc = z - self.centre_z
        x = self.wall_x(z, side)
        return -zc / x

    def wall_x_dzz(self, z: float, side: str = "right") -> float:
        x = self.wall_x(z, side)
        return -self.radius**2 / x**3

    def flat_span(self) -> tuple[float, float]:
        x = np.sqrt(self.radius**2 - self.fill_level**2)
        return (-x, x)

    def wetted_arc_points(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """n points on the wall below the surface datum, with outward normals.

        Points cluster toward both contact ends (Chebyshev spacing in the
        arc angle), matching the collocation philosophy of the rest of the
        code: resolution is spent where the contact line lives.
        """
        from .grid import cheb_nodes

        th_r = np.arcsin(self.fill_level / self.radius)
        th_l = np.pi - th_r
        # sweep from the right contact, under the bottom, to the left contact
        t = cheb_nodes(n + 2)[1:-1]  # strictly interior, clustered at ends
        theta = th_r + 0.5 * (t + 1.0) * ((th_l - 2.0 * np.pi) - th_r)
        x = self.radius * np.cos(theta)
        z = self.centre_z + self.radius * np.sin(theta)
        normals = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return np.stack([x, z], axis=1), normals


@dataclass(frozen=True)
class RightCircularCylinder:
    """Upright cylinder; interface is zeta(r) (axisymmetric) or zeta(r, theta)."""

    radius: float = 1.0
    depth: float = 1.0

    kind = "axisym"

    def __post_init__(self) -> None:
        _check_positive("radius", self.radius)
        _check_positive("depth", self.depth)

    def wall_fn(self, r: float, z: float, side: str = "wall") -> float:
        return r * r - self.radius**2

    def wall_grad(self, r: float, z: float, side: str = "wall") -> np.ndarray:
        return np.array([2.0 * r, 0.0])

    def flat_span(self) -> tuple[float, float]:
        return (-self.radius, self.radius)


def wall_normal(geometry, x: float, z: float, side: str = "right") -> np.ndarray:
    """Unit outward wall normal at a point on (or near) the wall.

    Raises if the gradient of the wall function is degenerate there, which
    happens only at points that are not on any wall (e.g. the centre of the
    circular channel).
    """
    g = geometry.wall_grad(x, z, side)
    norm = float(np.linalg.norm(g))
    if norm < 1e-12:
        raise ValueError("degenerate wall gradient; point is not on a wall")
    return g / norm
