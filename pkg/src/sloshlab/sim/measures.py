"""Exact volume and energy bookkeeping for the time-domain solver.

Liquid area (planar) or volume (axisymmetric) and the gravitational moment
are boundary integrals of the fluid region: A = -oint z dx and
int int z dA = -oint (z^2/2) dx, both taken counterclockwise.  The surface
part is Clenshaw-Curtis quadrature over the interface graph; the wall and
bottom parts are closed forms per geometry, written out below against
hand-checked references (semicircle, triangle, rectangle).

All planar quantities are per unit transverse length; axisymmetric ones are
true volumes.  Wetting energy uses the static contact angle of the run,
since the free energy of a configuration is
E = KE + int int z dA + (1/Bo)(free area - cos(alpha_s) * wetted area).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.geometry import (
    CircularChannel,
    RectangularChannel,
    RightCircularCylinder,
    WedgeChannel,
)
from ..core.interface import Interface

__all__ = [
    "liquid_volume",
    "gravitational_energy",
    "free_surface_measure",
    "wetted_measure",
    "EnergyBreakdown",
]


def _arc_angle(geometry: CircularChannel, x: float, z: float) -> float:
    """Angle of a wall point from the downward vertical through the centre."""
    return float(np.arctan2(x, geometry.centre_z - z))


def liquid_volume(geometry, interface: Interface) -> float:
    """Area (planar) or volume (axisym) of the fluid under the interface."""
    grid = interface.grid
    zeta = interface.height
    if isinstance(geometry, RightCircularCylinder):
        r = np.abs(grid.x)
        return float(np.pi * (grid.weights @ (r * zeta))) + (
            np.pi * geometry.radius**2 * geometry.depth
        )
    surf = grid.integrate(zeta)
    if isinstance(geometry, RectangularChannel):
        return surf + 2.0 * geometry.half_width * geometry.depth
    if isinstance(geometry, WedgeChannel):
        tb = np.tan(geometry.half_angle)
        z_l, z_r = zeta[0], zeta[-1]
        return surf + tb * (geometry.depth**2 - 0.5 * (z_l**2 + z_r**2))
    if isinstance(geometry, CircularChannel):
        zc, r2 = geometry.centre_z, geometry.radius**2
        phi_l = _arc_angle(geometry, grid.a, zeta[0])
        phi_r = _arc_angle(geometry, grid.b, zeta[-1])
        g2 = lambda p: 0.5 * p + 0.25 * np.sin(2.0 * p)  # noqa: E731
        return surf - zc * (grid.b - grid.a) + r2 * (g2(phi_r) - g2(phi_l))
    raise TypeError(f"no volume formula for {type(geometry).__name__}")


def gravitational_energy(geometry, interface: Interface) -> float:
    """int int z dA over the fluid region (negative below the datum)."""
    grid = interface.grid
    zeta = interface.height
    if isinstance(geometry, RightCircularCylinder):
        r = np.abs(grid.x)
        surf = np.pi * (grid.weights @ (r * zeta**2) / 2.0)
        return float(surf) - 0.5 * np.pi * geometry.radius**2 * geometry.depth**2
    surf = grid.integrate(0.5 * zeta**2)
    if isinstance(geometry, RectangularChannel):
        return surf - geometry.half_width * geometry.depth**2
    if isinstance(geometry, WedgeChannel):
        tb = np.tan(geometry.half_angle)
        d3 = geometry.depth**3
        return surf - tb * ((zeta[-1] ** 3 + d3) + (zeta[0] ** 3 + d3)) / 6.0
    if isinstance(geometry, CircularChannel):
        zc, rad = geometry.centre_z, geometry.radius
        phi_l = _arc_angle(geometry, grid.a, zeta[0])
        phi_r = _arc_angle(geometry, grid.b, zeta[-1])
        g2 = lambda p: 0.5 * p + 0.25 * np.sin(2.0 * p)  # noqa: E731
        s3 = lambda p: np.sin(p) - np.sin(p) ** 3 / 3.0  # noqa: E731

        def arc(p):
            return zc**2 * np.sin(p) - 2.0 * zc * rad * g2(p) + rad**2 * s3(p)

        return surf - 0.5 * rad * (arc(phi_r) - arc(phi_l))
    raise TypeError(f"no energy formula for {type(geometry).__name__}")


def free_surface_measure(interface: Interface) -> float:
    """Arc length (planar) or area (axisym) of the free surface."""
    grid = interface.grid
    zx = interface.slope()
    ds = np.sqrt(1.0 + zx**2)
    if interface.kind == "axisym":
        return float(np.pi * grid.weights @ (np.abs(grid.x) * ds))
    return grid.integrate(ds)


def wetted_measure(geometry, interface: Interface) -> float:
    """Wetted wall length (planar) or area (axisym)."""
    zeta = interface.height
    if isinstance(geometry, RightCircularCylinder):
        return float(
            2.0 * np.pi * geometry.radius * (0.5 * (zeta[0] + zeta[-1]) + geometry.depth)
        )
    if isinstance(geometry, RectangularChannel):
        return float(zeta[0] + zeta[-1] + 2.0 * geometry.depth)
    if isinstance(geometry, WedgeChannel):
        return float(
            (zeta[0] + zeta[-1] + 2.0 * geometry.depth) / np.cos(geometry.half_angle)
        )
    if isinstance(geometry, CircularChannel):
        phi_l = _arc_angle(geometry, interface.grid.a, zeta[0])
        phi_r = _arc_angle(geometry, interface.grid.b, zeta[-1])
        return float(geometry.radius * (phi_r - phi_l))
    raise TypeError(f"no wetted measure for {type(geometry).__name__}")


@dataclass
class EnergyBreakdown:
    """Energy split of one state; total is the conserved quantity."""

    kinetic: float
    gravitational: float
    surface: float
    wetting: float

    @property
    def total(self) -> float:
        return self.kinetic + self.gravitational + self.surface + self.wetting
