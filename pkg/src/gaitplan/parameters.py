"""Speed-dependent step parameters and height-scaled body geometry."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .config import InterpretationConfig, SpeedRangePolicy
from .errors import GeometryError, InvalidInputError, SpeedRangeError, SpeedRangeWarning

#: Speeds covered by the reference gait data [m/s].
SPEED_RANGE = (0.6, 2.2)

#: Distance of the foot CoR from both heel and metatarsus [m].
COR_OFFSET = 0.0921

# first-order regressions on walking speed: (slope, intercept)
STEP_WIDTH_FIT = (-0.009149, 0.1072)
HALF_STEP_LENGTH_FIT = (0.09399, 0.1624)
HEEL_STRIKE_ANGLE_FIT = (-1.162, 9.198)

PENDULUM_RATIO = 0.5943
ANKLE_HEEL_RATIO = 0.0253
ANKLE_HEIGHT_RATIO = 0.039


class RangeStatus(str, Enum):
    OK = "ok"
    WARNING = "warning"
    ERROR = "error"


@dataclass(frozen=True)
class StepParameters:
    """Gait quantities derived from walking speed.

    Attributes
    ----------
    speed : float
        Walking speed [m/s].
    step_width : float
        Lateral distance between the two foot lanes [m].
    step_length : float
        Anteroposterior distance between consecutive footsteps [m].
    heel_strike_angle : float
        Maximum foot pitch at heel strike [deg].
    step_time : float
        Duration of one step [s].
    step_frequency : float
        Inverse of `step_time` [1/s].
    lateral_amplitude : float
        Mediolateral CoM oscillation amplitude [m].
    """

    speed: float
    step_width: float
    step_length: float
    heel_strike_angle: float
    step_time: float
    step_frequency: float
    lateral_amplitude: float

    @property
    def stride_time(self) -> float:
        return 2.0 * self.step_time


@dataclass(frozen=True)
class BodyModel:
    """Anthropometric lengths [m] and foot angles [deg] for a given height."""

    height: float
    pendulum_length: float
    cor_offset: float
    ankle_heel_x: float
    ankle_height: float
    ankle_cor_x: float
    ankle_metatarsus_x: float
    leg_length: float
    ankle_heel_diagonal: float
    ankle_heel_angle: float
    ankle_metatarsus_diagonal: float
    ankle_metatarsus_angle: float


def _check_speed(speed) -> float:
    try:
        speed = float(speed)
    except (TypeError, ValueError):
        raise InvalidInputError(f"walking speed must be a number, got {speed!r}") from None
    if not math.isfinite(speed) or speed <= 0.0:
        lo, hi = SPEED_RANGE
        raise InvalidInputError(
            f"walking speed must be positive and finite, got {speed!r} "
            f"(validated range [{lo:g}, {hi:g}] m/s)"
        )
    return speed


def validate_speed_range(speed: float, policy=SpeedRangePolicy.WARN) -> RangeStatus:
    """Classify `speed` against the validated interval without raising."""
    if not math.isfinite(speed):
        return RangeStatus.ERROR
    lo, hi = SPEED_RANGE
    if lo <= speed <= hi:
        return RangeStatus.OK
    if SpeedRangePolicy(policy) is SpeedRangePolicy.REJECT:
        return RangeStatus.ERROR
    return RangeStatus.WARNING


def regress_gait_parameters(speed: float, cfg: InterpretationConfig | None = None) -> StepParameters:
    """Evaluate the speed regressions and the quantities that follow from them.

    The step lasts as long as the CoM needs to cover one step length, so
    ``step_time = step_length / speed``.  Out-of-range speeds warn or raise
    according to ``cfg.speed_range_policy``.
    """
    cfg = cfg or InterpretationConfig()
    speed = _check_speed(speed)
    status = validate_speed_range(speed, cfg.speed_range_policy)
    if status is RangeStatus.ERROR:
        raise SpeedRangeError(speed, SPEED_RANGE)
    if status is RangeStatus.WARNING:
        lo, hi = SPEED_RANGE
        warnings.warn(
            f"walking speed {speed:g} m/s is outside the validated range [{lo:g}, {hi:g}] m/s",
            SpeedRangeWarning,
            stacklevel=2,
        )

    step_width = STEP_WIDTH_FIT[0] * speed + STEP_WIDTH_FIT[1]
    step_length = 2.0 * (HALF_STEP_LENGTH_FIT[0] * speed + HALF_STEP_LENGTH_FIT[1])
    heel_strike_angle = HEEL_STRIKE_ANGLE_FIT[0] * speed + HEEL_STRIKE_ANGLE_FIT[1]
    if step_width <= 0.0 or step_length <= 0.0:
        raise InvalidInputError(f"speed {speed:g} m/s gives a non-positive step width or length")
    step_time = step_length / speed
    step_frequency = 1.0 / step_time
    # amplitude that aligns the oscillator asymptote with the saddle ordinate
    lateral_amplitude = step_width / (2.0 * math.pi * step_frequency * step_length)
    return StepParameters(
        speed=speed,
        step_width=step_width,
        step_length=step_length,
        heel_strike_angle=heel_strike_angle,
        step_time=step_time,
        step_frequency=step_frequency,
        lateral_amplitude=lateral_amplitude,
    )


def derive_body_geometry(height: float, step_width: float) -> BodyModel:
    """Scale the segment lengths to `height` and build the foot triangle.

    Raises
    ------
    GeometryError
        If the pendulum cannot reach the ground point, i.e. when
        ``pendulum**2 <= (step_width/2)**2 + ankle_cor_x**2``.
    """
    height = float(height)
    if not math.isfinite(height) or height <= 0.0:
        raise InvalidInputError(f"body height must be positive and finite, got {height!r}")
    step_width = float(step_width)
    if not math.isfinite(step_width) or step_width < 0.0:
        raise InvalidInputError(f"step width must be non-negative, got {step_width!r}")

    d = COR_OFFSET
    pendulum = PENDULUM_RATIO * height
    ankle_heel_x = ANKLE_HEEL_RATIO * height
    ankle_height = ANKLE_HEIGHT_RATIO * height
    ankle_cor_x = d - ankle_heel_x
    ankle_metatarsus_x = 2.0 * d - ankle_heel_x

    radicand = pendulum**2 - (step_width / 2.0) ** 2 - ankle_cor_x**2
    if radicand <= 0.0:
        raise GeometryError(
            "pendulum too short to reach the ground point: "
            f"{pendulum**2:.6g} <= {(step_width / 2.0) ** 2 + ankle_cor_x**2:.6g}"
        )
    leg_length = math.sqrt(radicand) - ankle_height

    return BodyModel(
        height=height,
        pendulum_length=pendulum,
        cor_offset=d,
        ankle_heel_x=ankle_heel_x,
        ankle_height=ankle_height,
        ankle_cor_x=ankle_cor_x,
        ankle_metatarsus_x=ankle_metatarsus_x,
        leg_length=leg_length,
        ankle_heel_diagonal=math.hypot(ankle_height, ankle_heel_x),
        ankle_heel_angle=math.degrees(math.atan2(ankle_height, ankle_heel_x)),
        ankle_metatarsus_diagonal=math.hypot(ankle_height, ankle_metatarsus_x),
        ankle_metatarsus_angle=math.degrees(math.atan2(ankle_height, ankle_metatarsus_x)),
    )
