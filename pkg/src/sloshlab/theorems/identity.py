"""Wall-chart substitution identity at a curved-wall contact point.

Near a contact point on a curved wall the wall is locally a graph
x = g(z), and differentiating the no-penetration condition along the
wall gives (with primes on g, subscripts on the flow)

    g'' u + g' (u_x + u_z g') = w_x + g' w_z.

The meniscus-side form trades the wall chart for surface quantities via
g' = -1/eta_s' and g'' = eta_s''/eta_s'^2 at the contact, yielding

    eta_s'' u = eta_s'^2 w_x + eta_s' (u_x - w_z) - u_z.

The check below verifies that the trade is exact: substituting the two
wall-slope relations into the first form and scaling by eta_s'^2
reproduces the second identically, for any flow sample whatsoever.  It
is a pure bookkeeping identity, so the residual must sit at round-off
regardless of whether the sample satisfies any field equation; what the
geometry supplies is the pair (eta_s', eta_s'') at an actual contact
point, which is where a localization bug would show up.

The relations require a finite, nonzero contact slope.  A right-angle
meniscus on a flat vertical wall has eta_s' = 0 (the chart g' blows up)
and the orthogonal meniscus on a circular channel at half full is flat
for the same reason; such inputs are rejected rather than silently
producing infinities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NumericalLimitError


@dataclass(frozen=True)
class Eq7cReport:
    wall_form: float
    surface_form: float
    residual: float
    contact_slope: float
    contact_second: float
    contact_point: tuple[float, float]


def wall_form_residual(u, w, u_x, u_z, w_x, w_z, g1, g2) -> float:
    """g''u + g'(u_x + u_z g') - (w_x + g' w_z) for wall chart x = g(z)."""
    return g2 * u + g1 * (u_x + u_z * g1) - (w_x + g1 * w_z)


def surface_form_residual(u, w, u_x, u_z, w_x, w_z, s1, s2) -> float:
    """eta_s''u - [eta_s'^2 w_x + eta_s'(u_x - w_z) - u_z]."""
    return s2 * u - (s1**2 * w_x + s1 * (u_x - w_z) - u_z)


def eq7c_identity_check(geometry, meniscus, flow, side: str = "right") -> Eq7cReport:
    """Residual of the wall-chart/surface-form trade at one contact point.

    flow is a FlowSample (or anything with u, w, u_x, u_z, w_x, w_z)
    evaluated at the contact; array-valued samples use their first
    entry.  Returns the two forms and |surface - slope^2 * wall|, which
    a correct substitution leaves at round-off.
    """
    pt_idx = 0 if side == "left" else 1
    arr_idx = 0 if side == "left" else -1
    try:
        x_c, z_c = meniscus.contact_points[pt_idx]
    except (AttributeError, IndexError, TypeError) as exc:
        raise NumericalLimitError(
            "contact-point localization failure: the meniscus solution "
            "does not expose a contact point for this side"
        ) from exc
    s1 = float(np.atleast_1d(meniscus.slope)[arr_idx])
    s2 = float(np.atleast_1d(meniscus.second)[arr_idx])
    if abs(s1) < 1e-8:
        raise NumericalLimitError(
            "the wall-chart substitution is degenerate at a horizontal-tangent "
            f"contact (eta_s' = {s1:.2e}); the wall there is not a graph x = g(z) "
            "with finite slope"
        )

    def scalar(name):
        return float(np.atleast_1d(getattr(flow, name))[0])

    u, w = scalar("u"), scalar("w")
    u_x, u_z = scalar("u_x"), scalar("u_z")
    w_x, w_z = scalar("w_x"), scalar("w_z")

    g1 = -1.0 / s1
    g2 = s2 / s1**2
    q_wall = wall_form_residual(u, w, u_x, u_z, w_x, w_z, g1, g2)
    q_surf = surface_form_residual(u, w, u_x, u_z, w_x, w_z, s1, s2)
    return Eq7cReport(
        wall_form=q_wall,
        surface_form=q_surf,
        residual=abs(q_surf - s1**2 * q_wall),
        contact_slope=s1,
        contact_second=s2,
        contact_point=(float(x_c), float(z_c)),
    )
