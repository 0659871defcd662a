from .engine import (
    ContactAngleTrace,
    EnergyTrace,
    RunResult,
    SimConfig,
    SloshingEngine,
    run,
    stable_dt,
)
from .measures import (
    EnergyBreakdown,
    free_surface_measure,
    gravitational_energy,
    liquid_volume,
    wetted_measure,
)
from .state import SimState, StandingWave, init_state

__all__ = [
    "SimState",
    "StandingWave",
    "init_state",
    "SimConfig",
    "SloshingEngine",
    "run",
    "stable_dt",
    "RunResult",
    "ContactAngleTrace",
    "EnergyTrace",
    "EnergyBreakdown",
    "liquid_volume",
    "gravitational_energy",
    "free_surface_measure",
    "wetted_measure",
]
