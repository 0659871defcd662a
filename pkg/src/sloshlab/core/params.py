"""Fluid parameters and container forcing.

Everything downstream works in nondimensional variables: lengths are scaled
by the container half-width (or cylinder radius), time by sqrt(L/g), and
pressure is measured relative to the ambient gas, which is taken as zero.
The single fluid parameter that survives is the Bond number

    Bo = rho g L^2 / sigma,

which multiplies gravity against capillarity in the normal-stress balance
p = -kappa / Bo on the free surface.

Forcing is a prescribed horizontal (or vertical) acceleration a(t) of the
container; in the co-moving frame it enters the dynamic boundary condition
as a fictitious body-force potential a(t) . x.  An impulsive *velocity*
start is not a forcing in this sense -- it is an initial condition on the
surface potential -- and is handled by `sim.init_state`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FluidParams",
    "Forcing",
    "ZeroForcing",
    "ImpulsiveAcceleration",
    "SinusoidalForcing",
]

_DEFAULT_GRAVITY = (0.0, 0.0, -1.0)


@dataclass(frozen=True)
class FluidParams:
    """Nondimensional fluid constants.

    bond: Bond number, > 0.
    gravity_dir: unit vector of gravity; solvers assume the default -z.
    ambient_pressure: gas pressure datum (kept at 0 by convention).
    """

    bond: float
    gravity_dir: tuple[float, float, float] = _DEFAULT_GRAVITY
    ambient_pressure: float = 0.0

    def __post_init__(self) -> None:
        if not self.bond > 0.0:
            raise ValueError(f"bond must be positive, got {self.bond}")
        g = np.asarray(self.gravity_dir, dtype=float)
        if abs(np.linalg.norm(g) - 1.0) > 1e-12:
            raise ValueError("gravity_dir must be a unit vector")
        if abs(self.ambient_pressure) > 0.0:
            # The normal-stress condition is written relative to the gas;
            # a nonzero datum would silently shift every Bernoulli constant.
            raise ValueError("ambient_pressure is fixed to 0 by convention")


class Forcing:
    """Base class: horizontal/vertical container acceleration a(t)."""

    direction: tuple[float, float] = (1.0, 0.0)  # (x, z) components

    def acceleration(self, t: float) -> np.ndarray:
        raise NotImplementedError

    def potential(self, t: float, x, z):
        """Body-force potential a(t) . x evaluated at surface points."""
        ax, az = self.acceleration(t)
        return ax * np.asarray(x) + az * np.asarray(z)


@dataclass(frozen=True)
class ZeroForcing(Forcing):
    def acceleration(self, t: float) -> np.ndarray:
        return np.zeros(2)


@dataclass(frozen=True)
class ImpulsiveAcceleration(Forcing):
    """Constant acceleration switched on at t = 0 (step start)."""

    amplitude: float = 1.0
    direction: tuple[float, float] = (1.0, 0.0)

    def acceleration(self, t: float) -> np.ndarray:
        if t < 0.0:
            return np.zeros(2)
        return self.amplitude * np.asarray(self.direction, dtype=float)


@dataclass(frozen=True)
class SinusoidalForcing(Forcing):
    amplitude: float = 1.0
    omega: float = 1.0
    phase: float = 0.0
    direction: tuple[float, float] = (1.0, 0.0)

    def acceleration(self, t: float) -> np.ndarray:
        a = self.amplitude * np.sin(self.omega * t + self.phase)
        return a * np.asarray(self.direction, dtype=float)
