"""Harmonic basis families for the interior Laplace problem.

Each family is a list of functions, exactly harmonic in the container's
coordinates, evaluated through a dense design matrix: `design(x, z, dx, dz)`
returns the (points x modes) array of the requested mixed derivative, with
all differentiation done analytically.  That one method feeds everything
downstream: Dirichlet fitting uses order 0, velocities order 1, and the
contact-line identities order 2.

Wall handling splits the families in two.  The rectangle, cylinder and
wedge modes satisfy no-penetration identically (cosine, Bessel-derivative
and wedge-angle wavenumbers are chosen for exactly that), so the boundary
solve never sees their walls.  The circular channel has no separable
wall-exact family; it gets plain harmonic polynomials plus penalized wall
rows assembled by the solver from `wall_probes`.

Depth profiles cosh(k(z+h))/cosh(kh) are normalized at the mean surface
level z = 0 and evaluated in exponential form, so large mode counts do not
overflow and the surface values stay O(1).
"""

from __future__ import annotations

import numpy as np
from scipy.special import jnp_zeros, jv

from ..core.geometry import (
    CircularChannel,
    RectangularChannel,
    RightCircularCylinder,
    WedgeChannel,
)
from ..errors import PotentialSolveError

__all__ = [
    "RectangleModes",
    "CylinderModes",
    "WedgeModes",
    "HarmonicPolynomials",
    "build_basis",
]


def _cosh_ratio(k: np.ndarray, z: np.ndarray, h: float) -> np.ndarray:
    """cosh(k(z+h))/cosh(kh), overflow-safe for k(z+h) and kh >= 0."""
    a = k * (z + h)
    b = k * h
    return np.exp(a - b) * (1.0 + np.exp(-2.0 * a)) / (1.0 + np.exp(-2.0 * b))


def _sinh_ratio(k: np.ndarray, z: np.ndarray, h: float) -> np.ndarray:
    """sinh(k(z+h))/cosh(kh), same stable form."""
    a = k * (z + h)
    b = k * h
    return np.exp(a - b) * (1.0 - np.exp(-2.0 * a)) / (1.0 + np.exp(-2.0 * b))


class RectangleModes:
    """cos(k_n (x + w)) cosh(k_n (z + h))/cosh(k_n h), k_n = n pi / (2w).

    The cosine kills the normal derivative at both vertical walls and the
    sinh factor vanishes on the flat bottom, so the family is wall-exact.
    """

    wall_exact = True
    kind = "planar"

    def __init__(self, geometry: RectangularChannel, n_modes: int):
        if n_modes < 1:
            raise ValueError("n_modes must be at least 1")
        self.geometry = geometry
        self.n_modes = n_modes
        n = np.arange(1, n_modes + 1, dtype=float)
        self.wavenumbers = n * np.pi / (2.0 * geometry.half_width)

    def design(self, x, z, dx: int = 0, dz: int = 0) -> np.ndarray:
        if dx + dz > 2:
            raise ValueError("derivatives beyond second order are not provided")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        z = np.atleast_1d(np.asarray(z, dtype=float))
        k = self.wavenumbers[None, :]
        arg = k * (x[:, None] + self.geometry.half_width)
        h = self.geometry.depth
        horiz = {0: np.cos, 1: lambda a: -np.sin(a), 2: lambda a: -np.cos(a)}[dx](arg)
        if dz % 2 == 0:
            vert = _cosh_ratio(k, z[:, None], h)
        else:
            vert = _sinh_ratio(k, z[:, None], h)
        return k ** (dx + dz) * horiz * vert

    def laplacian(self, x, z) -> np.ndarray:
        return self.design(x, z, 2, 0) + self.design(x, z, 0, 2)

    def in_domain(self, x, z, tol: float = 1e-9) -> np.ndarray:
        g = self.geometry
        return (np.abs(x) <= g.half_width + tol) & (z >= -g.depth - tol)


def _jv_dd(m: int, s: np.ndarray) -> np.ndarray:
    """Second derivative of J_m by the three-term recurrence."""
    return 0.25 * (jv(m - 2, s) - 2.0 * jv(m, s) + jv(m + 2, s))


class CylinderModes:
    """J_m(k_n r) cosh(k_n (z + h))/cosh(k_n h), k_n R = n-th zero of J_m'.

    m = 0 gives the axisymmetric family; m >= 1 carries an implicit
    cos(m theta) azimuthal factor and `design` evaluates the meridional
    part along a diameter (signed r, correct parity via J_m(-s)).
    The wavenumber choice makes the radial velocity vanish at the shell,
    and the sinh factor handles the bottom, so the family is wall-exact.
    """

    wall_exact = True
    kind = "axisym"

    def __init__(self, geometry: RightCircularCylinder, n_modes: int, m: int = 0):
        if n_modes < 1:
            raise ValueError("n_modes must be at least 1")
        if m < 0:
            raise ValueError("azimuthal order m must be nonnegative")
        self.geometry = geometry
        self.n_modes = n_modes
        self.m = m
        self.wavenumbers = jnp_zeros(m, n_modes) / geometry.radius

    def design(self, r, z, dx: int = 0, dz: int = 0) -> np.ndarray:
        if dx + dz > 2:
            raise ValueError("derivatives beyond second order are not provided")
        r = np.atleast_1d(np.asarray(r, dtype=float))
        z = np.atleast_1d(np.asarray(z, dtype=float))
        k = self.wavenumbers[None, :]
        s = k * r[:, None]
        m = self.m
        if dx == 0:
            radial = jv(m, s)
        elif dx == 1:
            radial = 0.5 * (jv(m - 1, s) - jv(m + 1, s))
        else:
            radial = _jv_dd(m, s)
        h = self.geometry.depth
        if dz % 2 == 0:
            vert = _cosh_ratio(k, z[:, None], h)
        else:
            vert = _sinh_ratio(k, z[:, None], h)
        return k ** (dx + dz) * radial * vert

    def laplacian(self, r, z) -> np.ndarray:
        """Cylindrical Laplacian of the full 3-d mode, azimuthal factor out."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        z = np.atleast_1d(np.asarray(z, dtype=float))
        out = self.design(r, z, 2, 0) + self.design(r, z, 0, 2)
        out += self.design(r, z, 1, 0) / r[:, None]
        if self.m:
            out -= self.m**2 * self.design(r, z, 0, 0) / r[:, None] ** 2
        return out

    def in_domain(self, r, z, tol: float = 1e-9) -> np.ndarray:
        g = self.geometry
        return (np.abs(r) <= g.radius + tol) & (z >= -g.depth - tol)


class WedgeModes:
    """Apex-polar harmonics (rho/rho_ref)^nu cos(nu (psi + beta)).

    psi is the angle from the upward vertical at the apex (0, -depth) and
    nu_n = n pi / (2 beta), which zeroes the angular derivative on both
    walls psi = +-beta.  Powers are taken of the complex coordinate
    w = ((z + depth) + i x)/rho_ref, so cartesian derivatives are exact;
    rho_ref = depth/cos(beta) (the apex-to-contact distance of the flat
    surface) keeps surface values O(1) at any mode count.
    """

    wall_exact = True
    kind = "planar"

    def __init__(self, geometry: WedgeChannel, n_modes: int):
        if n_modes < 1:
            raise ValueError("n_modes must be at least 1")
        self.geometry = geometry
        self.n_modes = n_modes
        beta = geometry.half_angle
        self.exponents = np.arange(1, n_modes + 1) * np.pi / (2.0 * beta)
        self.rho_ref = geometry.depth / np.cos(beta)
        # phase e^{i nu beta} rotates cos(nu psi') onto the principal branch
        self._phase = np.exp(1j * self.exponents * beta)

    def design(self, x, z, dx: int = 0, dz: int = 0) -> np.ndarray:
        if dx + dz > 2:
            raise ValueError("derivatives beyond second order are not provided")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        z = np.atleast_1d(np.asarray(z, dtype=float))
        w = ((z + self.geometry.depth) + 1j * x) / self.rho_ref
        nu = self.exponents[None, :]
        order = dx + dz
        fac = np.ones_like(nu)
        for j in range(order):
            fac = fac * (nu - j)
        vals = fac * w[:, None] ** (nu - order) * self._phase[None, :]
        # each d/dx contributes i/rho_ref, each d/dz contributes 1/rho_ref
        vals = vals * (1j**dx) / self.rho_ref**order
        return vals.real

    def laplacian(self, x, z) -> np.ndarray:
        return self.design(x, z, 2, 0) + self.design(x, z, 0, 2)

    def in_domain(self, x, z, tol: float = 1e-9) -> np.ndarray:
        g = self.geometry
        return (z >= -g.depth - tol) & (
            np.abs(x) <= (z + g.depth) * np.tan(g.half_angle) + tol
        )


class _RawHarmonicPolynomials:
    """Re and Im of ((x + i(z - z_c))/R)^j, centred on the circular shell.

    Harmonic for free but blind to the wall; serves as the raw pool that
    HarmonicPolynomials recombines.  Modes come in (Re, Im) pairs of
    increasing degree; scaling by the shell radius keeps them O(1).
    """

    def __init__(self, geometry: CircularChannel, n_modes: int):
        self.geometry = geometry
        self.n_modes = n_modes
        degrees = []
        take_real = []
        j = 1
        while len(degrees) < n_modes:
            degrees.append(j)
            take_real.append(True)
            if len(degrees) < n_modes:
                degrees.append(j)
                take_real.append(False)
            j += 1
        self.degrees = np.asarray(degrees, dtype=float)
        self._real_part = np.asarray(take_real)

    def design(self, x, z, dx: int = 0, dz: int = 0) -> np.ndarray:
        if dx + dz > 2:
            raise ValueError("derivatives beyond second order are not provided")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        z = np.atleast_1d(np.asarray(z, dtype=float))
        g = self.geometry
        w = (x + 1j * (z - g.centre_z)) / g.radius
        deg = self.degrees[None, :]
        order = dx + dz
        fac = np.ones_like(deg)
        for j in range(order):
            fac = fac * (deg - j)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = fac * w[:, None] ** (deg - order)
        # a zero derivative factor times the singular power w^(j-order) at
        # the shell centre produces 0*inf; the product is identically zero
        vals = np.where(np.isfinite(vals), vals, 0.0)
        vals = vals * (1j**dz) / g.radius**order
        return np.where(self._real_part[None, :], vals.real, vals.imag)


class HarmonicPolynomials:
    """Wall-quiet combinations of harmonic polynomials for the circular shell.

    No separable family fits a partially wetted circle, so the wall
    condition is built in by least squares: starting from a pool of raw
    polynomials (three to six times the requested count), the singular
    directions of the wall-flux operator with the smallest singular values
    become the working modes.  Each is exactly harmonic, and its normal
    velocity on the wetted arc is tiny; `wall_silence` records the largest
    kept singular value as the worst per-unit-coefficient wall flux.  The
    solver still appends penalized wall rows, which cost nothing here and
    keep one code path for any non-wall-exact family.
    """

    wall_exact = False
    kind = "planar"

    def __init__(self, geometry: CircularChannel, n_modes: int):
        if n_modes < 1:
            raise ValueError("n_modes must be at least 1")
        self.geometry = geometry
        self.n_modes = n_modes
        pool = 3 * n_modes
        while True:
            raw = _RawHarmonicPolynomials(geometry, pool)
            pts, normals = geometry.wetted_arc_points(4 * pool)
            flux = normals[:, :1] * raw.design(pts[:, 0], pts[:, 1], 1, 0)
            flux += normals[:, 1:] * raw.design(pts[:, 0], pts[:, 1], 0, 1)
            _, sigma, vt = np.linalg.svd(flux)
            if sigma[-n_modes] / sigma[0] < 1e-7 or pool >= 6 * n_modes:
                break
            pool += n_modes
        # quietest combinations first
        self._raw = raw
        self._combos = vt[-n_modes:][::-1].T.copy()
        self.wall_silence = float(sigma[-n_modes])

    def design(self, x, z, dx: int = 0, dz: int = 0) -> np.ndarray:
        return self._raw.design(x, z, dx, dz) @ self._combos

    def laplacian(self, x, z) -> np.ndarray:
        return self.design(x, z, 2, 0) + self.design(x, z, 0, 2)

    def wall_probes(self, n_probes: int) -> tuple[np.ndarray, np.ndarray]:
        return self.geometry.wetted_arc_points(n_probes)

    def in_domain(self, x, z, tol: float = 1e-9) -> np.ndarray:
        g = self.geometry
        return x**2 + (z - g.centre_z) ** 2 <= (g.radius + tol) ** 2


def _interior_probes(basis, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic scattered points strictly inside the resting fluid."""
    rng = np.random.default_rng(180451)
    g = basis.geometry
    xs, zs = [], []
    while len(xs) < count:
        if isinstance(g, RectangularChannel):
            x = rng.uniform(-g.half_width, g.half_width)
            z = rng.uniform(-g.depth, 0.0)
        elif isinstance(g, RightCircularCylinder):
            x = rng.uniform(-g.radius, g.radius)
            z = rng.uniform(-g.depth, 0.0)
            if abs(x) < 0.05 * g.radius:
                continue
        elif isinstance(g, WedgeChannel):
            rho = rng.uniform(0.1, 0.95) * g.depth
            psi = rng.uniform(-g.half_angle, g.half_angle)
            x, z = rho * np.sin(psi), rho * np.cos(psi) - g.depth
            if z > 0.0:
                continue
        elif isinstance(g, CircularChannel):
            rho = rng.uniform(0.1, 0.95) * g.radius
            th = rng.uniform(-np.pi, 0.0)
            x, z = rho * np.cos(th), g.centre_z + rho * np.sin(th)
            if z > 0.0:
                continue
        else:
            raise PotentialSolveError(f"unsupported geometry {type(g).__name__}")
        xs.append(x)
        zs.append(z)
    return np.asarray(xs), np.asarray(zs)


def _verify_harmonicity(basis, count: int = 100) -> None:
    x, z = _interior_probes(basis, count)
    lap = basis.laplacian(x, z)
    # scale against the second-derivative magnitude: large wavenumbers make
    # the two Laplacian halves huge before they cancel, and roundoff in the
    # cancellation is the honest noise floor
    scale = 1.0 + np.abs(basis.design(x, z, 2, 0)) + np.abs(basis.design(x, z, 0, 2))
    worst = float(np.max(np.abs(lap) / scale))
    if worst > 1e-12:
        raise PotentialSolveError(
            f"basis failed the harmonicity check (relative residual {worst:.1e})"
        )


def build_basis(geometry, n_modes: int, m: int = 0):
    """Construct the harmonic family for a geometry and verify it.

    Every returned basis has passed a 100-point interior Laplace-residual
    check; wall-exact families are also spot-checked for no-penetration.
    """
    if isinstance(geometry, RectangularChannel):
        basis = RectangleModes(geometry, n_modes)
    elif isinstance(geometry, RightCircularCylinder):
        basis = CylinderModes(geometry, n_modes, m=m)
    elif isinstance(geometry, WedgeChannel):
        basis = WedgeModes(geometry, n_modes)
    elif isinstance(geometry, CircularChannel):
        basis = HarmonicPolynomials(geometry, n_modes)
    else:
        raise PotentialSolveError(f"unsupported geometry {type(geometry).__name__}")
    _verify_harmonicity(basis)
    if basis.wall_exact:
        _verify_wall_condition(basis)
    return basis


def _verify_wall_condition(basis) -> None:
    g = basis.geometry
    zs = np.linspace(-0.95, -0.05, 7) * getattr(g, "depth", 1.0)
    # each mode's natural velocity magnitude; the no-flux cancellation is
    # exact analytically, so the residual per unit velocity is roundoff
    if isinstance(g, WedgeChannel):
        scale = 1.0 + basis.exponents / basis.rho_ref
    else:
        scale = 1.0 + basis.wavenumbers
    if isinstance(g, RectangularChannel):
        for x0, nx in ((g.half_width, 1.0), (-g.half_width, -1.0)):
            vn = nx * basis.design(np.full_like(zs, x0), zs, 1, 0)
            _assert_no_flux(vn / scale)
        xs = np.linspace(-0.9, 0.9, 7) * g.half_width
        _assert_no_flux(basis.design(xs, np.full_like(xs, -g.depth), 0, 1) / scale)
    elif isinstance(g, RightCircularCylinder):
        vn = basis.design(np.full_like(zs, g.radius), zs, 1, 0)
        _assert_no_flux(vn / scale)
        rs = np.linspace(-0.9, 0.9, 7) * g.radius
        _assert_no_flux(basis.design(rs, np.full_like(rs, -g.depth), 0, 1) / scale)
    elif isinstance(g, WedgeChannel):
        for side in ("left", "right"):
            xw = np.array([g.wall_x(z, side) for z in zs])
            grad = g.wall_grad(0.0, 0.0, side)
            vn = grad[0] * basis.design(xw, zs, 1, 0) + grad[1] * basis.design(
                xw, zs, 0, 1
            )
            _assert_no_flux(vn / scale)


def _assert_no_flux(vn: np.ndarray) -> None:
    worst = float(np.max(np.abs(vn)))
    if worst > 1e-12:
        raise PotentialSolveError(
            f"wall-exact basis leaks through a wall (normal velocity {worst:.1e})"
        )
