from .bases import (
    CylinderModes,
    HarmonicPolynomials,
    RectangleModes,
    WedgeModes,
    build_basis,
)
from .solve import (
    FlowSample,
    PotentialSolution,
    eval_flow,
    solve_acceleration_potential,
    solve_surface_dirichlet,
)

__all__ = [
    "RectangleModes",
    "CylinderModes",
    "WedgeModes",
    "HarmonicPolynomials",
    "build_basis",
    "PotentialSolution",
    "FlowSample",
    "solve_surface_dirichlet",
    "solve_acceleration_potential",
    "eval_flow",
]
