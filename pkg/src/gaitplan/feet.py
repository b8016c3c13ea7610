"""Footstep placement, saddle-line swing of the vCoRs, and foot contacts.

Footstep ``k`` sits at ``x = k * step_length`` on the left lane for even
``k`` and on the right lane for odd ``k``.  Step window ``k`` spans
``[k * t_step, (k + 1) * t_step)`` and has footstep ``k`` as support; the
foot behind it swings to footstep ``k + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .config import HeelStrikeFrame
from .errors import InvalidInputError, SingularityError
from .parameters import StepParameters

if TYPE_CHECKING:
    from .com import StepTimeline


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def parity(self) -> int:
        return 0 if self is Side.LEFT else 1


def side_of(index: int) -> Side:
    return Side.LEFT if index % 2 == 0 else Side.RIGHT


@dataclass(frozen=True)
class Footstep:
    index: int
    side: Side
    x: float
    y: float
    heel_strike: float
    toe_off_end: float


@dataclass(frozen=True)
class ContactState:
    left_contact: bool
    right_contact: bool

    @property
    def double_support(self) -> bool:
        return self.left_contact and self.right_contact


@dataclass(frozen=True)
class FootstepPlan:
    params: StepParameters
    timeline: "StepTimeline"
    footsteps: tuple[Footstep, ...]

    @property
    def first_index(self) -> int:
        return self.footsteps[0].index

    @property
    def last_index(self) -> int:
        return self.footsteps[-1].index

    def footstep(self, index: int) -> Footstep:
        i = index - self.first_index
        if not 0 <= i < len(self.footsteps):
            raise InvalidInputError(f"footstep {index} is outside the planned sequence")
        return self.footsteps[i]


def saddle_slope(com_xy, ref_xy) -> float:
    """Slope of the line from `ref_xy` through `com_xy` in the transverse plane.

    Returns a signed infinity when both points share the same x.
    """
    dx = com_xy[0] - ref_xy[0]
    dy = com_xy[1] - ref_xy[1]
    if dx == 0.0 and dy == 0.0:
        raise SingularityError("saddle slope undefined for coincident points")
    if dx == 0.0:
        return math.copysign(math.inf, dy)
    return dy / dx


def swing_displacement(t, sp: StepParameters):
    """Forward offset from the support foot at which the saddle line through
    the CoM meets the opposite lane (``-step_width / slope``), in metres.

    The support foot is at the origin on the lane toward which the CoM leans
    at ``t = 0``.  Zero when the CoM is level with the support foot.
    """
    t = np.asarray(t, dtype=float)
    dx = sp.speed * t
    dy = sp.lateral_amplitude * np.cos(math.pi * sp.step_frequency * t) - 0.5 * sp.step_width
    if np.any(dy == 0.0):
        raise SingularityError("zero saddle slope during swing")
    disp = -sp.step_width * dx / dy
    return float(disp) if disp.ndim == 0 else disp


def plan_footsteps(sp: StepParameters, timeline: "StepTimeline", n_steps: int, first_index: int = 0) -> FootstepPlan:
    """Place `n_steps` consecutive footsteps starting at `first_index`."""
    if int(n_steps) != n_steps or n_steps < 2:
        raise InvalidInputError(f"at least 2 footsteps are required, got {n_steps!r}")
    ts = sp.step_time
    steps = []
    for k in range(first_index, first_index + int(n_steps)):
        side = side_of(k)
        y = 0.5 * sp.step_width if side is Side.LEFT else -0.5 * sp.step_width
        steps.append(
            Footstep(
                index=k,
                side=side,
                x=k * sp.step_length,
                y=y,
                heel_strike=(k - 1) * ts + timeline.heel_strike,
                toe_off_end=(k + 1) * ts + timeline.toe_off_end,
            )
        )
    return FootstepPlan(params=sp, timeline=timeline, footsteps=tuple(steps))


def _latest_landed(t: np.ndarray, side: Side, plan: FootstepPlan) -> np.ndarray:
    # index of the most recent footstep of `side` whose heel strike is <= t
    ts = plan.params.step_time
    j = np.floor((t - plan.timeline.heel_strike) / ts).astype(np.int64) + 1
    return np.where(np.mod(j, 2) == side.parity, j, j - 1)


def foot_track(t, side: Side, plan: FootstepPlan):
    """Vectorised vCoR x position and contact flag of one foot.

    Returns ``(x, in_contact)`` arrays with the shape of `t`.
    """
    side = Side(side)
    sp, tl = plan.params, plan.timeline
    t = np.asarray(t, dtype=float)
    j = _latest_landed(t, side, plan)
    in_contact = t < (j + 1) * sp.step_time + tl.toe_off_end
    if j.size and (int(j.min()) < plan.first_index or int(np.where(in_contact, j, j + 2).max()) > plan.last_index):
        raise InvalidInputError("query time outside the planned footstep horizon")

    x_from = j * sp.step_length
    x_to = x_from + 2.0 * sp.step_length
    tau = t - (j + 1) * sp.step_time
    disp = swing_displacement(tau, sp)
    if tl.frame is HeelStrikeFrame.SYMMETRIC:
        swing_x = np.clip(x_from + sp.step_length + disp, x_from, x_to)
    else:
        swing_x = x_from + np.clip(disp, 0.0, x_to - x_from)
    x = np.where(in_contact, x_from, swing_x)
    return x, in_contact


def vcor_x(t: float, side, plan: FootstepPlan) -> float:
    """Anteroposterior vCoR position of `side` at time `t` [m].

    Constant while the foot is in contact; during swing it follows the
    saddle line of the support foot, clamped between the previous and the
    next placement.
    """
    x, _ = foot_track(np.asarray([t], dtype=float), side, plan)
    return float(x[0])


def contact_state(t: float, plan: FootstepPlan) -> ContactState:
    """A foot is in contact from its heel strike until its toe-off ends."""
    t_arr = np.asarray([t], dtype=float)
    _, left = foot_track(t_arr, Side.LEFT, plan)
    _, right = foot_track(t_arr, Side.RIGHT, plan)
    return ContactState(bool(left[0]), bool(right[0]))
