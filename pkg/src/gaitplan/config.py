"""Switches for the places where the model equations admit several readings."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from enum import Enum

from .errors import InvalidInputError


class VerticalPhaseMode(str, Enum):
    CONTINUOUS = "continuous"  # middle cosine negated, C0 trajectory
    AS_WRITTEN = "as_written"  # verbatim piecewise form, jumps of 2*A_z


class ZMaxMode(str, Enum):
    SQUARED = "squared"  # ankle-heel offset squared under the radical
    AS_WRITTEN = "as_written"  # offset subtracted unsquared


class AnkleShiftSource(str, Enum):
    """Which ankle offset sets the time shift of the vertical trajectory."""

    ANKLE_HEEL = "d_xAH"
    ANKLE_COR = "d_xA"


class SpeedRangePolicy(str, Enum):
    WARN = "warn"
    REJECT = "reject"


class HeelStrikeFrame(str, Enum):
    """Step-local frame used to locate heel strike.

    ``symmetric``
        Saddle-line displacement measured from the support foot; the swing
        is centred on the instant the swinging foot passes the support foot,
        so toe-off mirrors heel strike.
    ``support``
        Same displacement, but the swing starts when the CoM passes over the
        support foot.
    ``landing``
        Literal heel-strike condition with the CoM expressed relative to the
        planned landing point (x negative before reaching it).
    """

    SYMMETRIC = "symmetric"
    SUPPORT = "support"
    LANDING = "landing"


class LandingDistanceMode(str, Enum):
    """Form of the CoM-to-landing-CoR distance at heel strike."""

    AS_WRITTEN = "as_written"  # sqrt((pendulum - dx)^2 - dy^2)
    PYTHAGOREAN = "pythagorean"  # sqrt(pendulum^2 - dx^2 - dy^2)


@dataclass(frozen=True)
class InterpretationConfig:
    z_phase_mode: VerticalPhaseMode = VerticalPhaseMode.CONTINUOUS
    zmax_mode: ZMaxMode = ZMaxMode.SQUARED
    ankle_shift_source: AnkleShiftSource = AnkleShiftSource.ANKLE_HEEL
    speed_range_policy: SpeedRangePolicy = SpeedRangePolicy.WARN
    heel_strike_frame: HeelStrikeFrame = HeelStrikeFrame.SYMMETRIC
    landing_distance_mode: LandingDistanceMode = LandingDistanceMode.AS_WRITTEN

    def __post_init__(self):
        # accept plain strings, e.g. from the CLI or a config file
        for f in fields(self):
            value = getattr(self, f.name)
            enum_type = type(f.default)
            if not isinstance(value, enum_type):
                object.__setattr__(self, f.name, parse_enum(enum_type, value))

    def with_(self, **changes) -> InterpretationConfig:
        return replace(self, **changes)

    def as_dict(self) -> dict[str, str]:
        return {f.name: getattr(self, f.name).value for f in fields(self)}


_ALIASES = {
    "as-written": "as_written",
    "aswritten": "as_written",
    "dxah": "d_xAH",
    "ankle-heel": "d_xAH",
    "heel": "d_xAH",
    "dxa": "d_xA",
    "ankle-cor": "d_xA",
    "cor": "d_xA",
}


def parse_enum(enum_type, value):
    if isinstance(value, enum_type):
        return value
    text = str(value).strip()
    for candidate in (text, text.lower(), _ALIASES.get(text.lower(), text)):
        try:
            return enum_type(candidate)
        except ValueError:
            continue
    choices = ", ".join(m.value for m in enum_type)
    raise InvalidInputError(f"invalid {enum_type.__name__} {value!r}; expected one of: {choices}")
