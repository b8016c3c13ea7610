"""Centre-of-mass trajectory: lateral oscillator, heel-strike timing and height.

All times handled here are step-local: ``t = 0`` is the instant the CoM
passes over the support foot's vCoR, which is also the instant of maximum
lateral excursion toward that foot.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .config import (
    AnkleShiftSource,
    HeelStrikeFrame,
    InterpretationConfig,
    LandingDistanceMode,
    VerticalPhaseMode,
    ZMaxMode,
)
from .errors import GeometryError, NoRootError, SingularityError
from .feet import swing_displacement
from .parameters import BodyModel, StepParameters

logger = logging.getLogger(__name__)

#: Residual tolerance of the heel-strike solver [m].
RESIDUAL_TOL = 1e-10
MAX_BISECTIONS = 200
_DENOMINATOR_EPS = 1e-12


@dataclass(frozen=True)
class HeelStrikeGeometry:
    """CoM-to-foot distances [m] entering the vertical amplitude."""

    dx: float
    dy: float
    landing_distance: float
    support_distance: float
    raw_amplitude: float


@dataclass(frozen=True)
class StepTimeline:
    """Event times within one step [s] and the vertical trajectory constants [m].

    ``toe_off_end`` is negative when the swing starts in the previous step
    window (symmetric frame); contacts repeat with period ``step_time``.
    """

    heel_strike: float
    toe_off_end: float
    step_time: float
    vertical_amplitude: float
    max_height: float
    ankle_shift: float
    geometry: HeelStrikeGeometry
    frame: HeelStrikeFrame = HeelStrikeFrame.SYMMETRIC
    swing_start: float = 0.0
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def swing_duration(self) -> float:
        return self.heel_strike - self.toe_off_end

    @property
    def min_height(self) -> float:
        return self.max_height - 2.0 * self.vertical_amplitude


def com_transverse(t, sp: StepParameters):
    """CoM position in the transverse plane: constant forward speed plus a
    lateral cosine with period of two steps.  Vectorised over `t`."""
    t = np.asarray(t, dtype=float)
    x = sp.speed * t
    y = sp.lateral_amplitude * np.cos(math.pi * sp.step_frequency * t)
    if x.ndim == 0:
        return float(x), float(y)
    return x, y


def heel_strike_residual(t, sp: StepParameters, bm: BodyModel, frame=HeelStrikeFrame.SYMMETRIC):
    """Left-hand side of the heel-strike condition at step-local time `t` [m].

    The constant part is the step length shortened by the horizontal
    heel-to-CoR offset of the pitched landing foot.  In the ``landing`` frame
    the CoM is expressed relative to the planned landing point; otherwise the
    variable part is the saddle-line swing displacement measured from the
    support foot.
    """
    frame = HeelStrikeFrame(frame)
    t = np.asarray(t, dtype=float)
    base = sp.step_length - bm.cor_offset * math.cos(math.radians(sp.heel_strike_angle))
    if frame is HeelStrikeFrame.LANDING:
        x = sp.speed * t - sp.step_length
        y = -sp.lateral_amplitude * np.cos(math.pi * sp.step_frequency * t)
        den = y - 0.5 * sp.step_width
        if np.any(np.abs(den) < _DENOMINATOR_EPS):
            raise SingularityError(
                "CoM lateral offset to the landing point vanished; "
                "lateral amplitude must stay below half the step width"
            )
        r = base - sp.step_width * x / den
    else:
        r = base - np.asarray(swing_displacement(t, sp))
    return float(r) if r.ndim == 0 else r


def _bisect(f, a: float, b: float, tol: float = RESIDUAL_TOL, max_iter: int = MAX_BISECTIONS) -> float:
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NoRootError((a, b), (fa, fb))
    mid = 0.5 * (a + b)
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if abs(fm) < tol or mid in (a, b):
            break
        if math.copysign(1.0, fm) == math.copysign(1.0, fa):
            a, fa = mid, fm
        else:
            b = mid
    return mid


def heel_strike_bracket(sp: StepParameters) -> tuple[float, float]:
    eps = 1e-6 * sp.step_time
    return eps, sp.step_time - eps


def solve_heel_strike_time(sp: StepParameters, bm: BodyModel, frame=HeelStrikeFrame.SYMMETRIC) -> float:
    """Root of :func:`heel_strike_residual` inside the step, by bisection.

    Raises
    ------
    NoRootError
        When the residual has the same sign at both bracket ends.
    """
    a, b = heel_strike_bracket(sp)
    return _bisect(lambda t: heel_strike_residual(t, sp, bm, frame), a, b)


def z_max(sp: StepParameters, bm: BodyModel, cfg: InterpretationConfig | None = None) -> float:
    """CoM height when it is aligned with the support ankle [m]."""
    cfg = cfg or InterpretationConfig()
    offset = bm.ankle_heel_x**2 if cfg.zmax_mode is ZMaxMode.SQUARED else bm.ankle_heel_x
    radicand = bm.pendulum_length**2 - (0.5 * sp.step_width) ** 2 - offset
    if radicand <= 0.0:
        raise GeometryError(f"maximum CoM height radicand is non-positive ({radicand:.6g} m^2)")
    return math.sqrt(radicand)


def vertical_amplitude(
    sp: StepParameters, bm: BodyModel, t_hs: float, cfg: InterpretationConfig | None = None
) -> tuple[float, HeelStrikeGeometry]:
    """Vertical CoM amplitude from the pendulum lengths at swing start and heel strike.

    At heel strike the landing foot is taken at its planned placement one
    step length ahead of the support foot, on the opposite lane.  At the
    start of the cycle the CoM sits above the support vCoR at the maximum
    height.  A negative amplitude is clamped to zero and logged.
    """
    cfg = cfg or InterpretationConfig()
    x_com, y_com = com_transverse(t_hs, sp)
    dx = sp.step_length - x_com
    dy = y_com + 0.5 * sp.step_width
    if cfg.landing_distance_mode is LandingDistanceMode.AS_WRITTEN:
        radicand = (bm.pendulum_length - dx) ** 2 - dy**2
    else:
        radicand = bm.pendulum_length**2 - dx**2 - dy**2
    if radicand < 0.0:
        raise GeometryError(
            f"pendulum cannot reach the landing point at heel strike (radicand {radicand:.6g} m^2)"
        )
    theta = math.radians(sp.heel_strike_angle + bm.ankle_heel_angle)
    landing = math.sqrt(radicand) + bm.cor_offset * math.sin(theta)

    height = z_max(sp, bm, cfg)
    lateral_gap = 0.5 * sp.step_width - sp.lateral_amplitude
    support = math.sqrt(lateral_gap**2 + height**2)

    raw = support - landing
    amplitude = raw
    if raw < 0.0:
        logger.warning("negative vertical amplitude %.6g m clamped to zero", raw)
        amplitude = 0.0
    return amplitude, HeelStrikeGeometry(dx, dy, landing, support, raw)


def ankle_shift(sp: StepParameters, bm: BodyModel, cfg: InterpretationConfig | None = None) -> float:
    """Time the CoM needs to cover the ankle offset [s]."""
    cfg = cfg or InterpretationConfig()
    offset = bm.ankle_heel_x if cfg.ankle_shift_source is AnkleShiftSource.ANKLE_HEEL else bm.ankle_cor_x
    return offset / sp.speed


def plan_timeline(sp: StepParameters, bm: BodyModel, cfg: InterpretationConfig | None = None) -> StepTimeline:
    """Solve heel strike and assemble every per-step constant of the planner."""
    cfg = cfg or InterpretationConfig()
    frame = cfg.heel_strike_frame
    t_hs = solve_heel_strike_time(sp, bm, frame)
    toe_off = -t_hs if frame is HeelStrikeFrame.SYMMETRIC else 0.0

    diagnostics = []
    if frame is HeelStrikeFrame.LANDING:
        base = sp.step_length - bm.cor_offset * math.cos(math.radians(sp.heel_strike_angle))
        mismatch = float(swing_displacement(t_hs, sp)) - base
        if abs(mismatch) > 1e-6:
            diagnostics.append(
                f"swing displacement at heel strike differs from the landing condition by {mismatch:.6g} m"
            )

    amplitude, geometry = vertical_amplitude(sp, bm, t_hs, cfg)
    if geometry.raw_amplitude < 0.0:
        diagnostics.append(f"negative vertical amplitude {geometry.raw_amplitude:.6g} m clamped to 0")
    height = z_max(sp, bm, cfg)
    shift = ankle_shift(sp, bm, cfg)
    if t_hs + shift <= 0.0:
        raise SingularityError("heel-strike time plus ankle shift must be positive")
    if t_hs >= sp.step_time - shift:
        raise GeometryError(
            f"heel strike at {t_hs:.6g} s leaves no rising phase before {sp.step_time - shift:.6g} s"
        )
    if sp.step_time - t_hs + toe_off < 0.0:
        raise GeometryError("swing longer than one step: no double support")

    return StepTimeline(
        heel_strike=t_hs,
        toe_off_end=toe_off,
        step_time=sp.step_time,
        vertical_amplitude=amplitude,
        max_height=height,
        ankle_shift=shift,
        geometry=geometry,
        frame=frame,
        diagnostics=tuple(diagnostics),
    )


def com_vertical(t, timeline: StepTimeline, cfg: InterpretationConfig | None = None):
    """Piecewise-cosine CoM height [m]; `t` is folded into one step.

    The descent runs from the ankle-aligned apex to the minimum at heel
    strike, the rise from heel strike to the next apex.  In ``as_written``
    mode the middle branch keeps its original sign, which puts jumps of
    ``2 * A_z`` at both interior boundaries.
    """
    cfg = cfg or InterpretationConfig()
    tl = timeline
    t = np.asarray(t, dtype=float)
    tau = np.mod(t, tl.step_time)
    shift = tl.ankle_shift
    descent = tl.heel_strike + shift
    rise = tl.step_time - tl.heel_strike - shift
    base = tl.max_height - tl.vertical_amplitude
    a = tl.vertical_amplitude
    sign = -1.0 if cfg.z_phase_mode is VerticalPhaseMode.CONTINUOUS else 1.0

    first = base + a * np.cos(math.pi * (tau + shift) / descent)
    middle = base + sign * a * np.cos(math.pi * (tau - tl.heel_strike) / rise)
    last = base + a * np.cos(math.pi * (tau - tl.step_time + shift) / descent)
    z = np.where(tau <= tl.heel_strike, first, np.where(tau <= tl.step_time - shift, middle, last))
    return float(z) if z.ndim == 0 else z
