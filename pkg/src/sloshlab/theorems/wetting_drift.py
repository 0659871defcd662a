"""Linearized sloshing on the tangent-contact meniscus, and its drift.

The zero-contact-angle equilibrium cannot be time-stepped by the
nonlinear engine: the surface leaves the wall tangentially, so the
height graph has infinite slope at the contact and the moving-grid
description collapses.  The linearized problem has no such trouble when
posed in surface-intrinsic variables.  This module evolves

    nu_t  = dphi/dn                      (kinematic, normal displacement)
    phi_t = -nu n_z + (nu_ss + kappa^2 nu)/Bo - a(t) x    (Bernoulli)

on the static tangent-contact curve of a straight-walled channel, with
phi the surface trace of a harmonic potential fitted by the same
collocation least squares the nonlinear engine uses.  No condition of
any kind is imposed at the contact points; the pair (nu, phi) there
evolves from the same rows as the interior.

The quantity of interest is the rotation of the surface tangent at the
contact, d(nu)/ds, which is the linearized change of contact angle
against the fixed wall.  Starting from rest under a step acceleration
the angle deviation must grow quadratically if it grows at all; the
mechanism is the quadratic departure of the meniscus from the wall
(eta_s'' in the along-wall graph) times the along-wall fluid
acceleration at the contact, with the wall-normal velocity pinned to
zero by no-penetration.  Both the time trace and that t = 0 mechanism
product are exposed so they can be compared as independent routes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NumericalLimitError
from ..core.geometry import RectangularChannel
from ..core.grid import ChebGrid
from ..meniscus.wetting import lab_frame_curve, solve_wall_aligned
from ..potential import build_basis

RK4_IMAG_LIMIT = 2.0


@dataclass(frozen=True)
class WettingDriftRun:
    """Trace of the linearized zero-angle run.

    dalpha is the signed tangent rotation at the right contact; alpha_tt
    its second time derivative at t = 0 from the acceleration field, and
    w_t_contact the along-wall fluid acceleration there (the two factors
    of the drift mechanism; the third, eta_s''(0), lives with the static
    solution).
    """

    bond: float
    times: np.ndarray
    dalpha: np.ndarray
    nu_max: float
    alpha_tt: float
    w_t_contact: float
    dt: float
    misfit: float


def _static_curve(bond, half_width, n_surface, n_profile, orientation):
    m = solve_wall_aligned(bond, half_width=half_width, n=n_profile)
    x_half, z_half, z_c = lab_frame_curve(m, orientation)

    # Global parameter p in [-pi/2, pi/2]: signed inclination, negative on
    # the mirrored left half.  The lab curve is analytic through the
    # midline (x odd in p, z even), so one spectral grid covers the whole
    # surface and differentiation never crosses a seam.
    grid = ChebGrid(n_surface, -0.5 * np.pi, 0.5 * np.pi)
    chi = np.abs(grid.x)
    x = np.sign(grid.x) * m.chi_grid.interp(x_half, chi)
    z = m.chi_grid.interp(z_half, chi)

    xp = grid.D @ x
    zp = grid.D @ z
    speed = np.hypot(xp, zp)
    normal = np.stack([-zp, xp], axis=1) / speed[:, None]
    kappa = (xp * (grid.D @ zp) - zp * (grid.D @ xp)) / speed**3
    d_s = grid.D / speed[:, None]

    # The parametric curvature must reproduce the static balance
    # z - kappa/Bo = const.  A scrambled orientation or normal flips the
    # sign of kappa and shows up at order one; the threshold only needs
    # to sit well above the interpolation noise of the steepest profiles.
    balance = z - kappa / bond
    spread = float(np.ptp(balance))
    if spread > 1e-4 * max(1.0, float(np.max(np.abs(balance)))):
        raise AssertionError(
            f"static tangent-contact curve violates its own balance "
            f"(spread {spread:.2e}); curvature convention is inconsistent"
        )
    return grid, x, z, normal, kappa, d_s, z_c


def linearized_wetting_run(
    bond: float,
    half_width: float = 1.0,
    amplitude: float = 0.1,
    t_end: float = 1.2,
    n_surface: int = 129,
    n_modes: int = 24,
    n_profile: int = 96,
    depth: float = 1.5,
    orientation: str = "rising",
) -> WettingDriftRun:
    """Step-forced linearized run about the zero-angle meniscus.

    The container is the straight-walled channel of the given half
    width; the basis is the exact no-flux cosine family, so the only
    approximation on the fluid side is the least-squares fit of the
    surface trace along the curved meniscus.
    """
    grid, x, z, normal, kappa, d_s, _ = _static_curve(
        bond, half_width, n_surface, n_profile, orientation
    )
    geometry = RectangularChannel(half_width=half_width, depth=depth)
    basis = build_basis(geometry, n_modes)

    design = np.column_stack([basis.design(x, z), np.ones_like(x)])
    grad = (
        normal[:, 0:1] * basis.design(x, z, 1, 0)
        + normal[:, 1:2] * basis.design(x, z, 0, 1)
    )
    grad = np.column_stack([grad, np.zeros_like(x)])
    fit = np.linalg.pinv(design)
    dtn = grad @ fit

    force = -amplitude * x

    # The cosh columns spread over the full height range of the curved
    # surface, and past roughly two dozen modes the least squares rank
    # collapses: the fitted trace then diverges from its own data and
    # every contact readout is garbage.  Refuse to run in that regime.
    misfit = float(np.max(np.abs(design @ (fit @ force) - force)))
    if misfit > 1e-3 * abs(amplitude):
        raise NumericalLimitError(
            f"surface trace fit unusable (misfit {misfit:.2e} for forcing "
            f"amplitude {amplitude:g}); lower n_modes toward 24"
        )

    stiffness = np.diag(normal[:, 1]) - (d_s @ d_s + np.diag(kappa**2)) / bond

    # nu'' = -dtn @ stiffness @ nu for the homogeneous part; the spectral
    # radius of that product sets the step for the imaginary-axis RK4
    # stability limit.
    omega_sq = np.max(np.abs(np.linalg.eigvals(dtn @ stiffness)))
    dt = RK4_IMAG_LIMIT / np.sqrt(omega_sq)
    n_steps = max(1, int(np.ceil(t_end / dt)))
    dt = t_end / n_steps

    def rhs(state):
        nu, phi = state
        return np.array([dtn @ phi, -(stiffness @ nu) + force])

    state = np.zeros((2, len(x)))
    times = np.empty(n_steps + 1)
    dalpha = np.empty(n_steps + 1)
    nu_max = 0.0
    for step in range(n_steps + 1):
        times[step] = step * dt
        dalpha[step] = float((d_s @ state[0])[-1])
        nu_max = max(nu_max, float(np.max(np.abs(state[0]))))
        if step == n_steps:
            break
        k1 = rhs(state)
        k2 = rhs(state + 0.5 * dt * k1)
        k3 = rhs(state + 0.5 * dt * k2)
        k4 = rhs(state + dt * k3)
        state = state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    # Mechanism factors at t = 0: the acceleration potential is the fit
    # of the forcing data itself, so its trace and normal flux come from
    # the precomputed operators.
    phi_t0 = force
    alpha_tt = float((d_s @ (dtn @ phi_t0))[-1])
    coeffs_t0 = fit @ phi_t0
    xc, zc = float(x[-1]), float(z[-1])
    w_t_contact = float(
        (basis.design(np.array([xc]), np.array([zc]), 0, 1) @ coeffs_t0[:-1])[0]
    )
    return WettingDriftRun(
        bond=bond,
        times=times,
        dalpha=dalpha,
        nu_max=nu_max,
        alpha_tt=alpha_tt,
        w_t_contact=w_t_contact,
        dt=dt,
        misfit=misfit,
    )
