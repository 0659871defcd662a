from .axisym import solve_meniscus_axisym
from .planar import solve_meniscus_planar
from .solution import MeniscusSolution, WallAlignedMeniscus, contact_curvature
from .wetting import (
    WettingLimitReport,
    lab_frame_curve,
    solve_wall_aligned,
    wetting_limit_check,
)

__all__ = [
    "MeniscusSolution",
    "WallAlignedMeniscus",
    "WettingLimitReport",
    "contact_curvature",
    "solve_meniscus_planar",
    "solve_meniscus_axisym",
    "solve_wall_aligned",
    "wetting_limit_check",
    "lab_frame_curve",
]
