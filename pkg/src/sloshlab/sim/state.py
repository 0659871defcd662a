"""Evolution state and initial data for the free-surface solver.

A state is the pair (zeta, Phi): interface heights and the surface trace of
the velocity potential, both on the Chebyshev nodes of the current span.
For walls that are not vertical the span itself is slaved to the endpoint
heights through the wall shape x = X_w(z), so the heights alone determine
the whole configuration; nothing else is integrated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import jnp_zeros, jv

from ..core.geometry import RightCircularCylinder
from ..core.grid import ChebGrid
from ..core.interface import Interface
from ..core.params import SinusoidalForcing
from ..meniscus.solution import MeniscusSolution

__all__ = ["SimState", "StandingWave", "init_state"]


@dataclass
class SimState:
    """One snapshot of the evolving surface.

    forcing_phase records omega*t for sinusoidal forcing so a run can be
    restarted in phase; it is zero for the other forcing types.
    """

    t: float
    interface: Interface
    phi_surface: np.ndarray = field(repr=False)
    forcing_phase: float = 0.0

    def __post_init__(self) -> None:
        self.phi_surface = np.asarray(self.phi_surface, dtype=float)
        if self.phi_surface.shape != self.interface.height.shape:
            raise ValueError("phi_surface does not match the interface grid")

    def copy(self) -> "SimState":
        iface = Interface(
            self.interface.grid, self.interface.height.copy(), kind=self.interface.kind
        )
        return SimState(self.t, iface, self.phi_surface.copy(), self.forcing_phase)

    def check_contacts(self, geometry, tol: float = 1e-10) -> None:
        """Endpoints must sit on the container wall."""
        for idx, side in ((0, "left"), (-1, "right")):
            x_c = self.interface.x[idx]
            z_c = self.interface.height[idx]
            if geometry.kind == "axisym":
                gap = abs(abs(x_c) - geometry.radius)
            else:
                gap = abs(x_c - geometry.wall_x(z_c, side))
            if gap > tol:
                raise ValueError(
                    f"{side} contact point off the wall by {gap:.2e} (tol {tol:.0e})"
                )


@dataclass(frozen=True)
class StandingWave:
    """Cosine standing-wave initial data on a flat surface, fluid at rest.

    The shape is the mode_index-th no-flux mode of the flat-surface
    problem: cos(k_m (x - x_l)) with k_m = m*pi/span for planar containers
    (sign fixed so even modes crest at the centre, e.g. mode 2 on [-1, 1]
    is +cos(pi x)), and J_0(j'_{0,m} r/R) for the axisymmetric cylinder.
    Both have zero slope at the walls, so the initial contact angle is
    exactly pi/2, and zero mean, so no volume correction is needed.
    """

    geometry: object
    epsilon: float
    mode_index: int = 2
    n_nodes: int = 32


def _planar_wave(span: tuple[float, float], m: int, x: np.ndarray) -> np.ndarray:
    k = m * np.pi / (span[1] - span[0])
    return (-1.0) ** m * np.cos(k * (x - span[0]))


def _axisym_wave(radius: float, m: int, r: np.ndarray) -> np.ndarray:
    k = jnp_zeros(0, m)[-1] / radius
    return jv(0, k * r)


def init_state(base, epsilon: float | None = None, n_nodes: int | None = None,
               mode_index: int | None = None, impulse: float = 0.0) -> SimState:
    """Initial SimState from a static meniscus or a standing-wave spec.

    For a MeniscusSolution the static profile is resampled onto n_nodes and
    a cosine (planar) or Bessel (axisym) bump of amplitude epsilon is
    added; epsilon = 0 reproduces the equilibrium exactly.  Because the
    bump moves the endpoint heights, the span is re-slaved to the walls by
    a short fixed-point iteration (a no-op for vertical walls).

    impulse gives the container a horizontal velocity jump at t = 0: the
    pressure impulse leaves the surface in place and sets the surface
    potential to -impulse * x, after which the fluid moves immediately.
    This is the start-from-rest-with-a-kick used by the derivative-cascade
    checks; it is not a Forcing because nothing acts for t > 0.
    """
    if isinstance(base, StandingWave):
        geometry = base.geometry
        eps = base.epsilon if epsilon is None else epsilon
        m = base.mode_index if mode_index is None else mode_index
        n = base.n_nodes if n_nodes is None else n_nodes
        span = geometry.flat_span()
        grid = ChebGrid(n, *span)
        if isinstance(geometry, RightCircularCylinder):
            zeta = eps * _axisym_wave(geometry.radius, m, np.abs(grid.x))
            kind = "axisym"
        else:
            zeta = eps * _planar_wave(span, m, grid.x)
            kind = "planar"
        _check_amplitude(zeta, grid, geometry)
        return SimState(0.0, Interface(grid, zeta, kind=kind), -impulse * grid.x)

    if not isinstance(base, MeniscusSolution):
        raise TypeError("base must be a MeniscusSolution or a StandingWave")
    geometry = base.geometry
    if geometry is None:
        raise ValueError("meniscus solution does not carry its geometry")
    eps = 0.0 if epsilon is None else epsilon
    n = base.grid.n if n_nodes is None else n_nodes
    m = 2 if mode_index is None else mode_index

    x_l, x_r = base.grid.a, base.grid.b
    grid = ChebGrid(n, x_l, x_r)
    zeta = base.grid.interp(base.height, grid.x)
    if eps != 0.0:
        if base.kind == "axisym":
            zeta = zeta + eps * _axisym_wave(geometry.radius, m, np.abs(grid.x))
        else:
            # the bump shifts the contact heights, which moves the span on
            # non-vertical walls; iterate span -> resample -> span
            for _ in range(6):
                zeta = base.grid.interp(base.height, grid.x) + eps * _planar_wave(
                    (x_l, x_r), m, grid.x
                )
                new_l = geometry.wall_x(float(zeta[0]), "left")
                new_r = geometry.wall_x(float(zeta[-1]), "right")
                if abs(new_l - x_l) + abs(new_r - x_r) < 1e-14:
                    break
                x_l, x_r = new_l, new_r
                grid = ChebGrid(n, x_l, x_r)
    _check_amplitude(zeta, grid, geometry)
    return SimState(0.0, Interface(grid, zeta, kind=base.kind), -impulse * grid.x)


def _check_amplitude(zeta: np.ndarray, grid: ChebGrid, geometry) -> None:
    slope = grid.D @ zeta
    if np.max(np.abs(slope)) > 10.0:
        raise ValueError("perturbation violates the single-valued surface bound")
    depth = getattr(geometry, "depth", None)
    if depth is not None and np.min(zeta) < -0.9 * depth:
        raise ValueError("perturbation reaches the container bottom")


def forcing_phase(forcing, t: float) -> float:
    if isinstance(forcing, SinusoidalForcing):
        return forcing.omega * t
    return 0.0
