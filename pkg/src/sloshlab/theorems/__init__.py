"""Numerical checks of the contact-line preservation results."""

from .cascade import (
    CascadeReport,
    DerivativeEstimate,
    GrowthFit,
    cascade_check_flat,
    derivative_ladder,
    growth_exponent,
)
from .drift import CurvedWallRate, T2Fit, curved_wall_rate, drift_t2_coefficient
from .identity import (
    Eq7cReport,
    eq7c_identity_check,
    surface_form_residual,
    wall_form_residual,
)
from .wetting_drift import WettingDriftRun, linearized_wetting_run

__all__ = [
    "CascadeReport",
    "DerivativeEstimate",
    "GrowthFit",
    "cascade_check_flat",
    "derivative_ladder",
    "growth_exponent",
    "CurvedWallRate",
    "T2Fit",
    "curved_wall_rate",
    "drift_t2_coefficient",
    "Eq7cReport",
    "eq7c_identity_check",
    "surface_form_residual",
    "wall_form_residual",
    "WettingDriftRun",
    "linearized_wetting_run",
]
