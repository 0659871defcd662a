"""Derivative-cascade estimates and growth-exponent fits on contact traces.

The constancy results assert that every time derivative of the contact
slope vanishes when the moving contact sits on a flat wall at a right
angle; the drift results assert that specific low-order derivatives
survive otherwise.  Both are claims about derivatives of a sampled
signal, so a bare finite difference would be unfalsifiable.  Every
estimate here is therefore formed on a geometric ladder of step sizes
{d, 2d, 4d} with one Richardson pass, and the spread over everything the
ladder produced is quoted as the uncertainty.

Verdicts use two thresholds: an estimate within twice its uncertainty is
"consistent" with zero, one exceeding five times is "nonzero", anything
between is "indeterminate".  The asymmetric band keeps both error types
honest: a constancy claim is not rescued by a lucky small spread, and a
drift claim needs real separation from the noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NumericalLimitError

CONSISTENT_FACTOR = 2.0
NONZERO_FACTOR = 5.0

# One-sided stencils of second-order accuracy for the k-th derivative at
# the first sample.  The trace starts at t = 0 where nothing earlier
# exists, so the start-of-trace ladder cannot be central; these are the
# standard forward-difference tables.
_FORWARD = {
    1: (np.array([-3.0, 4.0, -1.0]), 2.0),
    2: (np.array([2.0, -5.0, 4.0, -1.0]), 1.0),
    3: (np.array([-5.0, 18.0, -24.0, 14.0, -3.0]), 2.0),
    4: (np.array([3.0, -14.0, 26.0, -24.0, 11.0, -2.0]), 1.0),
}

# Central stencils (also second order) for interior reference times.
_CENTRAL = {
    1: (np.array([-1.0, 0.0, 1.0]), 2.0),
    2: (np.array([1.0, -2.0, 1.0]), 1.0),
    3: (np.array([-1.0, 2.0, 0.0, -2.0, 1.0]), 2.0),
    4: (np.array([1.0, -4.0, 6.0, -4.0, 1.0]), 1.0),
}


def _stencil_value(values, i0, stride, dt, k, one_sided):
    coeffs, denom = (_FORWARD if one_sided else _CENTRAL)[k]
    if one_sided:
        offsets = np.arange(len(coeffs)) * stride
    else:
        half = (len(coeffs) - 1) // 2
        offsets = (np.arange(len(coeffs)) - half) * stride
    idx = i0 + offsets
    if idx.min() < 0 or idx.max() >= len(values):
        raise NumericalLimitError(
            f"insufficient sampling density: order-{k} ladder needs samples "
            f"at indices {idx.min()}..{idx.max()} but the trace has "
            f"{len(values)}"
        )
    return float(coeffs @ values[idx]) / (denom * (stride * dt) ** k)


def derivative_ladder(values, dt, k, i0=0, stride=3, one_sided=None):
    """Estimate the k-th time derivative of a uniformly sampled signal.

    Three stencil widths {stride, 2*stride, 4*stride} samples feed one
    Richardson pass (the stencils are second order, so the pass combines
    neighbouring rungs as (4a - b)/3).  Returns (estimate, uncertainty)
    where the uncertainty is the larger of the Richardson-pair spread and
    the raw rung spread; the latter dominates exactly when the signal is
    noise at the stencil scale, which is the regime where extrapolation
    is meaningless and the estimate must not be trusted beyond it.
    """
    if one_sided is None:
        one_sided = i0 == 0
    rungs = [
        _stencil_value(values, i0, stride * mult, dt, k, one_sided)
        for mult in (1, 2, 4)
    ]
    refined = [(4.0 * rungs[i] - rungs[i + 1]) / 3.0 for i in range(2)]
    uncertainty = max(abs(refined[0] - refined[1]), np.ptp(rungs))
    return refined[0], float(uncertainty)


def _verdict(estimate: float, uncertainty: float) -> str:
    if abs(estimate) <= CONSISTENT_FACTOR * uncertainty:
        return "consistent"
    if abs(estimate) >= NONZERO_FACTOR * uncertainty:
        return "nonzero"
    return "indeterminate"


@dataclass(frozen=True)
class DerivativeEstimate:
    k: int
    estimate: float
    uncertainty: float
    verdict: str


@dataclass(frozen=True)
class GrowthFit:
    """Power-law fit of a contact-angle deviation, |dev| ~ c * t^p."""

    exponent: float
    coefficient: float
    r_squared: float
    window: tuple[float, float]
    n_points: int
    max_deviation: float
    detected: bool
    note: str


@dataclass(frozen=True)
class CascadeReport:
    """Ladder estimates of d^k(contact slope)/dt^k plus the growth fit."""

    side: str
    dt: float
    stride: int
    derivatives: tuple[DerivativeEstimate, ...]
    growth: GrowthFit
    first_nonzero_k: int | None

    @property
    def all_consistent(self) -> bool:
        return all(d.verdict == "consistent" for d in self.derivatives)


_SIDES = {"left": 0, "right": 1}


def _uniform_dt(times: np.ndarray) -> float:
    steps = np.diff(times)
    dt = float(steps[0])
    if not np.allclose(steps, dt, rtol=1e-9, atol=1e-14):
        raise ValueError("trace sampling must be uniform for ladder estimates")
    return dt


def cascade_check_flat(trace, K: int = 3, side: str = "right", stride: int = 3):
    """Estimate the first K time derivatives of the contact slope at t = 0.

    The flat-wall right-angle theorem predicts every one of them is zero;
    feeding a trace from any other configuration is how the detector is
    exercised, and an impulsively started non-orthogonal run shows its
    first surviving derivative already at k = 1.

    K is capped at 4: the ladder divides by (stride*dt)^k and beyond the
    fourth derivative round-off dominates at double precision.
    """
    if not 1 <= K <= 4:
        raise ValueError("K must be between 1 and 4; higher orders drown in round-off")
    col = _SIDES[side]
    values = np.asarray(trace.contact_slope)[:, col]
    dt = _uniform_dt(trace.times)

    derivatives = []
    for k in range(1, K + 1):
        est, unc = derivative_ladder(values, dt, k, i0=0, stride=stride)
        derivatives.append(DerivativeEstimate(k, est, unc, _verdict(est, unc)))

    growth = growth_exponent(trace, side=side)
    first_nonzero = next((d.k for d in derivatives if d.verdict == "nonzero"), None)
    return CascadeReport(
        side=side,
        dt=dt,
        stride=stride,
        derivatives=tuple(derivatives),
        growth=growth,
        first_nonzero_k=first_nonzero,
    )


def growth_exponent(
    trace,
    side: str = "right",
    alpha_ref: float | None = None,
    window: tuple[float, float] | None = None,
    min_points: int = 20,
    floor: float = 1e-9,
    min_r_squared: float = 0.9,
) -> GrowthFit:
    """Fit |alpha(t) - alpha_ref| ~ c * t^p on a log-log scale.

    alpha_ref defaults to the first trace sample, which is the static
    angle for every start-from-rest run.  The fit window defaults to
    (t_2, t_mid); callers with a known saturation time pass their own.

    Three outcomes: a clean fit (detected, with p and R^2), "no drift
    detected" when the deviation never leaves the floor or refuses a
    power law (low R^2), and an error when the window holds fewer than
    min_points samples, because an exponent from a handful of points
    would be noise dressed as a measurement.

    Instead of a ContactAngleTrace, any object with .times and .alpha
    works; a bare (times, deviation) pair is accepted for signals that
    are already deviations, such as the linearized tangent-contact run.
    """
    if hasattr(trace, "times") and hasattr(trace, "alpha"):
        times = np.asarray(trace.times, dtype=float)
        alpha = np.asarray(trace.alpha)
        series = alpha[:, _SIDES[side]] if alpha.ndim == 2 else alpha
        ref = float(series[0]) if alpha_ref is None else float(alpha_ref)
        dev = np.abs(series - ref)
    else:
        times, dev = trace
        times = np.asarray(times, dtype=float)
        dev = np.abs(np.asarray(dev, dtype=float))

    if window is None:
        window = (float(times[min(2, len(times) - 1)]), float(times[len(times) // 2]))
    lo, hi = window
    mask = (times >= lo) & (times <= hi) & (dev > 0.0)
    n = int(np.count_nonzero(mask))
    if n < min_points:
        raise NumericalLimitError(
            f"growth-exponent window [{lo:g}, {hi:g}] holds {n} usable points; "
            f"at least {min_points} are required"
        )
    max_dev = float(np.max(dev[mask]))
    if max_dev <= floor:
        return GrowthFit(
            exponent=float("nan"),
            coefficient=0.0,
            r_squared=0.0,
            window=(lo, hi),
            n_points=n,
            max_deviation=max_dev,
            detected=False,
            note=f"no drift detected: deviation stays below the {floor:g} floor",
        )

    lt = np.log(times[mask])
    ld = np.log(dev[mask])
    slope, intercept = np.polyfit(lt, ld, 1)
    resid = ld - (slope * lt + intercept)
    ss_tot = float(np.sum((ld - ld.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 0.0

    detected = r2 >= min_r_squared and slope > 0.5
    note = (
        "drift detected"
        if detected
        else f"no drift detected: deviation does not follow a power law (R^2 = {r2:.3f})"
    )
    return GrowthFit(
        exponent=float(slope),
        coefficient=float(np.exp(intercept)),
        r_squared=r2,
        window=(lo, hi),
        n_points=n,
        max_deviation=max_dev,
        detected=detected,
        note=note,
    )
