"""Dirichlet data on the deformed surface to velocities everywhere.

The interior problem is Laplace's equation with prescribed potential on the
free surface and no-penetration on the walls.  With a harmonic basis both
conditions collapse into one least-squares fit: surface rows match the
Dirichlet data at the interface nodes (which sit on the deformed surface,
not the datum), wall rows penalize normal velocity at probe points for
families that are not wall-exact, and a free constant column absorbs the
potential's gauge.  A small Tikhonov term keeps the normal equations
positive definite near the conditioning limit; the condition number of the
raw collocation matrix is reported on every solve and trips an error when
the fit can no longer be trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core.interface import Interface
from ..errors import PotentialSolveError

__all__ = [
    "PotentialSolution",
    "FlowSample",
    "solve_surface_dirichlet",
    "solve_acceleration_potential",
    "eval_flow",
]

_COND_LIMIT = 1e12


@dataclass
class PotentialSolution:
    """Fitted coefficients plus the diagnostics every caller should log."""

    basis: object = field(repr=False)
    coefficients: np.ndarray = field(repr=False)
    gauge: float
    misfit_abs: float
    misfit_rel: float
    condition: float
    interface: Interface = field(repr=False)


@dataclass
class FlowSample:
    """Velocity and velocity-gradient entries at query points.

    u is the horizontal (or radial, along the diameter) component phi_x and
    w the vertical component phi_z; second derivatives follow the same
    naming.  All entries are exact derivatives of the fitted potential, so
    u_z - w_x vanishes to roundoff and the appropriate continuity identity
    holds by construction.
    """

    u: np.ndarray
    w: np.ndarray
    u_x: np.ndarray
    u_z: np.ndarray
    w_x: np.ndarray
    w_z: np.ndarray


def solve_surface_dirichlet(
    basis,
    interface: Interface,
    phi_surface: np.ndarray,
    wall_weight: float = 1e3,
    tikhonov: float = 1e-12,
    n_wall_probes: int | None = None,
) -> PotentialSolution:
    """Fit basis coefficients to surface potential data.

    The system is deliberately overdetermined (surface nodes plus wall
    probes must be at least twice the mode count); the returned misfit is
    measured at the surface nodes after the solve.
    """
    phi_surface = np.asarray(phi_surface, dtype=float)
    x = interface.x
    zeta = interface.height
    if phi_surface.shape != x.shape:
        raise ValueError("phi_surface does not match the interface grid")
    if not np.all(basis.in_domain(x, zeta, tol=1e-6)):
        raise ValueError("interface leaves the container geometry")

    n_modes = basis.n_modes
    surf = basis.design(x, zeta)
    blocks = [np.hstack([surf, np.ones((x.size, 1))])]
    rhs = [phi_surface]
    n_rows = x.size

    if not basis.wall_exact:
        n_probes = n_wall_probes or max(2 * n_modes, 32)
        pts, normals = basis.wall_probes(n_probes)
        vn = normals[:, :1] * basis.design(pts[:, 0], pts[:, 1], 1, 0) + normals[
            :, 1:
        ] * basis.design(pts[:, 0], pts[:, 1], 0, 1)
        wall = np.hstack([wall_weight * vn, np.zeros((n_probes, 1))])
        blocks.append(wall)
        rhs.append(np.zeros(n_probes))
        n_rows += n_probes

    if n_rows < 2 * n_modes:
        raise ValueError(
            f"collocation must be overdetermined: {n_rows} rows for "
            f"{n_modes} modes (need at least {2 * n_modes})"
        )

    a = np.vstack(blocks)
    b = np.concatenate(rhs)
    condition = float(np.linalg.cond(a))
    if condition > _COND_LIMIT:
        raise PotentialSolveError(
            f"collocation matrix condition {condition:.2e} exceeds "
            f"{_COND_LIMIT:.0e}; reduce the mode count or regularize harder"
        )

    a_aug = np.vstack([a, np.sqrt(tikhonov) * np.eye(n_modes + 1)])
    b_aug = np.concatenate([b, np.zeros(n_modes + 1)])
    sol = np.linalg.lstsq(a_aug, b_aug, rcond=None)[0]
    coeffs, gauge = sol[:-1], float(sol[-1])

    fit = surf @ coeffs + gauge
    misfit_abs = float(np.max(np.abs(fit - phi_surface)))
    denom = float(np.max(np.abs(phi_surface)))
    misfit_rel = misfit_abs / denom if denom > 0.0 else misfit_abs
    return PotentialSolution(
        basis=basis,
        coefficients=coeffs,
        gauge=gauge,
        misfit_abs=misfit_abs,
        misfit_rel=misfit_rel,
        condition=condition,
        interface=interface,
    )


def solve_acceleration_potential(
    basis, interface: Interface, meniscus, forcing, t0: float
) -> PotentialSolution:
    """Potential of the initial acceleration field for a start from rest.

    With the fluid at rest, Bernoulli on the surface linearizes to
    phi_t = -zeta + kappa/Bo - a(t0) . x, which is Dirichlet data for the
    harmonic field phi_t; its gradient gives u_t, w_t at t0.  On a static
    meniscus with zero forcing the data is the constant -lam, so the
    acceleration field vanishes identically.
    """
    kappa = interface.curvature()
    data = -interface.height + kappa / meniscus.bond
    data = data - forcing.potential(t0, interface.x, interface.height)
    return solve_surface_dirichlet(basis, interface, data)


def eval_flow(ps: PotentialSolution, x, z) -> FlowSample:
    """Velocities and gradients of the fitted potential at given points."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    z = np.atleast_1d(np.asarray(z, dtype=float))
    basis = ps.basis
    inside = basis.in_domain(x, z, tol=1e-6)
    surface_cap = ps.interface.grid.interp(ps.interface.height, x)
    if not np.all(inside & (z <= surface_cap + 1e-6)):
        raise ValueError("flow evaluation outside the closure of the fluid domain")
    c = ps.coefficients
    mixed = basis.design(x, z, 1, 1) @ c
    return FlowSample(
        u=basis.design(x, z, 1, 0) @ c,
        w=basis.design(x, z, 0, 1) @ c,
        u_x=basis.design(x, z, 2, 0) @ c,
        u_z=mixed,
        w_x=mixed,
        w_z=basis.design(x, z, 0, 2) @ c,
    )
