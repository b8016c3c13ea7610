"""Gait metrics, reference amplitude curves, polynomial fitting and speed sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .com import StepTimeline
from .config import InterpretationConfig
from .errors import InsufficientDataError, InvalidInputError, SingularFitError

# quadratic fits of the human reference amplitudes on speed, highest power first
LATERAL_AMPLITUDE_REF = (0.011, -0.041, 0.051)
VERTICAL_AMPLITUDE_REF = (0.012, -0.003, 0.021)

SWEEP_STEPS = 6
SWEEP_DT = 1e-3


@dataclass(frozen=True)
class GaitMetrics:
    speed: float
    double_support_pct: float
    contact_pct: float
    lateral_amplitude: float
    vertical_amplitude: float
    heel_strike_norm: float


@dataclass(frozen=True)
class PolyFit:
    degree: int
    coefficients: tuple[float, ...]
    r_squared: float

    def __call__(self, x):
        return np.polyval(self.coefficients, x)


def gait_phase_metrics(timeline: StepTimeline) -> tuple[float, float]:
    """Double support and single-foot contact as percentages of the gait cycle.

    A foot is airborne for one swing per gait cycle (two steps), and the two
    double-support intervals fill the rest of each step, which gives
    ``contact = 50 + ds / 2``.
    """
    swing_fraction = timeline.swing_duration / timeline.step_time
    ds = (1.0 - swing_fraction) * 100.0
    return ds, 50.0 + ds / 2.0


def sampled_double_support(traj) -> float:
    """Share of samples with both feet down over whole gait cycles [%]."""
    t = traj.samples["t"]
    cycle = 2.0 * traj.step_time
    n_cycles = math.floor((t[-1] - t[0]) / cycle + 1e-12) if len(t) else 0
    if n_cycles < 1:
        raise InsufficientDataError("trajectory shorter than one gait cycle")
    window = t < t[0] + n_cycles * cycle
    both = traj.samples["left_contact"] & traj.samples["right_contact"]
    return 100.0 * float(np.count_nonzero(both[window])) / float(np.count_nonzero(window))


def extract_amplitudes(traj) -> tuple[float, float]:
    """Half peak-to-peak lateral and vertical CoM excursion over one gait cycle.

    Uses the second gait cycle when the trajectory covers it, else the first.
    """
    t = traj.samples["t"]
    if len(t) < 2:
        raise InsufficientDataError("trajectory has fewer than two samples")
    cycle = 2.0 * traj.step_time
    span = t[-1] - t[0]
    if span + 1e-12 < cycle:
        raise InsufficientDataError(
            f"trajectory spans {span:.6g} s, shorter than one gait cycle ({cycle:.6g} s)"
        )
    start = t[0] + cycle if span + 1e-12 >= 2.0 * cycle else t[0]
    window = (t >= start - 1e-12) & (t <= start + cycle + 1e-12)
    y = traj.samples["y_com"][window]
    z = traj.samples["z_com"][window]
    return 0.5 * float(y.max() - y.min()), 0.5 * float(z.max() - z.min())


def desired_amplitudes(speed: float) -> tuple[float, float]:
    """Reference lateral and vertical CoM amplitudes of human walking [m]."""
    if not math.isfinite(speed) or speed <= 0.0:
        raise InvalidInputError(f"walking speed must be positive, got {speed!r}")
    return (
        float(np.polyval(LATERAL_AMPLITUDE_REF, speed)),
        float(np.polyval(VERTICAL_AMPLITUDE_REF, speed)),
    )


def r_squared(y, y_fit) -> float:
    y = np.asarray(y, dtype=float)
    ss_res = float(np.sum((y - y_fit) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 1.0 if ss_res == 0.0 else -math.inf
    return 1.0 - ss_res / ss_tot


def fit_polynomial(samples: Iterable[Sequence[float]], degree: int) -> PolyFit:
    """Least-squares polynomial of `degree` through ``(x, y)`` pairs."""
    if degree not in (1, 2):
        raise InvalidInputError(f"degree must be 1 or 2, got {degree!r}")
    data = np.asarray(list(samples), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise InvalidInputError("samples must be a sequence of (x, y) pairs")
    if len(data) < degree + 1:
        raise InvalidInputError(f"need at least {degree + 1} samples for degree {degree}, got {len(data)}")
    if not np.all(np.isfinite(data)):
        raise InvalidInputError("samples contain non-finite values")
    x, y = data[:, 0], data[:, 1]
    design = np.vander(x, degree + 1)
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < degree + 1:
        raise SingularFitError(f"design matrix has rank {rank} < {degree + 1}: x values not distinct enough")
    return PolyFit(degree, tuple(float(c) for c in coef), r_squared(y, design @ coef))


def speed_values(v_min: float, v_max: float, step: float) -> list[float]:
    if not (math.isfinite(v_min) and math.isfinite(v_max) and math.isfinite(step)):
        raise InvalidInputError("speed range bounds must be finite")
    if step <= 0.0:
        raise InvalidInputError(f"speed step must be positive, got {step!r}")
    if v_min > v_max:
        raise InvalidInputError(f"v_min {v_min:g} exceeds v_max {v_max:g}")
    n = math.floor((v_max - v_min) / step + 1e-9)
    return [round(v_min + i * step, 12) for i in range(n + 1)]


def measure(traj) -> GaitMetrics:
    ds, contact = gait_phase_metrics(traj.timeline)
    a_y, a_z = extract_amplitudes(traj)
    return GaitMetrics(
        speed=traj.params.speed,
        double_support_pct=ds,
        contact_pct=contact,
        lateral_amplitude=a_y,
        vertical_amplitude=a_z,
        heel_strike_norm=traj.timeline.heel_strike / traj.timeline.step_time,
    )


def speed_sweep(
    v_min: float,
    v_max: float,
    step: float,
    height: float = 1.71,
    cfg: InterpretationConfig | None = None,
    n_steps: int = SWEEP_STEPS,
    dt: float = SWEEP_DT,
) -> list[GaitMetrics]:
    """Plan and measure a gait at each speed of the inclusive range."""
    from .trajectory import RunConfig, plan_gait

    cfg = cfg or InterpretationConfig()
    out = []
    for v in speed_values(v_min, v_max, step):
        traj = plan_gait(RunConfig(speed=v, height=height, n_steps=n_steps, dt=dt, interpretation=cfg))
        out.append(measure(traj))
    return out
