"""Free-surface description and curvature operators.

The interface is a single-valued graph over a horizontal coordinate: z =
zeta(x) for planar containers, z = zeta(r) for axisymmetric ones.  Heights
live on the Chebyshev grid of a ChebGrid instance; derivatives come from
the grid's differentiation matrices, so every geometric quantity below is
spectrally accurate for smooth surfaces.

Sign conventions, fixed once here and relied on everywhere else:

* curvature kappa = zeta''/(1+zeta'^2)^(3/2) in the plane, i.e. kappa > 0
  where the surface is convex up (a bowl).
* the axisymmetric mean curvature adds the hoop term zeta_r/(r sqrt(1+...)),
  with the r -> 0 limit 2*zeta_rr(0); a hemispherical bowl of radius R has
  kappa = 2/R at the apex.
* capillary pressure jump: p - p_ambient = -kappa/Bo.
"""

from __future__ import annotations

import numpy as np

from .grid import ChebGrid

__all__ = [
    "planar_curvature",
    "axisym_curvature",
    "Interface",
]


def planar_curvature(zeta_x: np.ndarray, zeta_xx: np.ndarray) -> np.ndarray:
    return zeta_xx / (1.0 + zeta_x**2) ** 1.5


def axisym_curvature(r: np.ndarray, zeta_r: np.ndarray, zeta_rr: np.ndarray) -> np.ndarray:
    """Mean curvature (sum of principal curvatures) of z = zeta(r).

    Safe at r = 0 only if the caller supplies the limit themselves; the
    solvers here always use grids that avoid r = 0, and on a symmetric
    full-diameter grid the hoop term zeta_r/r is a smooth even function.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r == 0.0):
        raise ValueError("axisym curvature grid must avoid r = 0")
    s = np.sqrt(1.0 + zeta_r**2)
    return zeta_rr / s**3 + zeta_r / (r * s)


class Interface:
    """Nodal surface heights on a Chebyshev grid, with geometry helpers.

    kind is "planar" (coordinate x) or "axisym" (coordinate r on the full
    diameter, so symmetric profiles stay smooth through the axis).
    """

    def __init__(self, grid: ChebGrid, height: np.ndarray, kind: str = "planar"):
        if kind not in ("planar", "axisym"):
            raise ValueError(f"unknown interface kind {kind!r}")
        height = np.asarray(height, dtype=float)
        if height.shape != grid.x.shape:
            raise ValueError("height array does not match the grid")
        self.grid = grid
        self.height = height
        self.kind = kind

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def slope(self) -> np.ndarray:
        return self.grid.D @ self.height

    def slope2(self) -> np.ndarray:
        return self.grid.D2 @ self.height

    def curvature(self) -> np.ndarray:
        zx = self.slope()
        zxx = self.slope2()
        if self.kind == "planar":
            return planar_curvature(zx, zxx)
        return axisym_curvature(self.grid.x, zx, zxx)

    def mean_height(self) -> float:
        if self.kind == "planar":
            return self.grid.integrate(self.height) / (self.grid.b - self.grid.a)
        # volume mean over the disc: int zeta r dr / int r dr on r in [0, a],
        # evaluated on the full diameter with |r| weighting
        w = self.grid.weights * np.abs(self.grid.x)
        return float(w @ self.height / np.sum(w))

    def contact_height(self, side: str) -> float:
        return float(self.height[-1] if side in ("right", "wall") else self.height[0])

    def contact_slope(self, side: str) -> float:
        zx = self.slope()
        return float(zx[-1] if side in ("right", "wall") else zx[0])
