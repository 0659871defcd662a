from .contact import contact_angle, contact_angle_formula, contact_angle_normals
from .geometry import (
    CircularChannel,
    RectangularChannel,
    RightCircularCylinder,
    WedgeChannel,
    wall_normal,
)
from .grid import ChebGrid, cheb_diff, cheb_diff2, cheb_nodes, clenshaw_curtis_weights
from .interface import Interface, axisym_curvature, planar_curvature
from .params import (
    FluidParams,
    Forcing,
    ImpulsiveAcceleration,
    SinusoidalForcing,
    ZeroForcing,
)

__all__ = [
    "ChebGrid",
    "cheb_nodes",
    "cheb_diff",
    "cheb_diff2",
    "clenshaw_curtis_weights",
    "FluidParams",
    "Forcing",
    "ZeroForcing",
    "ImpulsiveAcceleration",
    "SinusoidalForcing",
    "RectangularChannel",
    "WedgeChannel",
    "CircularChannel",
    "RightCircularCylinder",
    "wall_normal",
    "Interface",
    "planar_curvature",
    "axisym_curvature",
    "contact_angle",
    "contact_angle_formula",
    "contact_angle_normals",
]
