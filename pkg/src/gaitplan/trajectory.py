"""End-to-end planning: from a run configuration to sampled trajectories."""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .com import StepTimeline, com_transverse, com_vertical, plan_timeline
from .config import InterpretationConfig
from .errors import GaitPlanError, InvalidInputError
from .feet import FootstepPlan, Side, foot_track, plan_footsteps
from .parameters import BodyModel, StepParameters, _check_speed, derive_body_geometry, regress_gait_parameters

SCHEMA_VERSION = "1"

COLUMNS = (
    "t",
    "x_com",
    "y_com",
    "z_com",
    "x_vcor_l",
    "y_vcor_l",
    "x_vcor_r",
    "y_vcor_r",
    "left_contact",
    "right_contact",
)
BOOL_COLUMNS = ("left_contact", "right_contact")


@dataclass(frozen=True)
class RunConfig:
    speed: float = 1.2
    height: float = 1.71
    n_steps: int = 4
    dt: float = 0.005
    output_format: str = "csv"
    output_path: str | None = None
    interpretation: InterpretationConfig = field(default_factory=InterpretationConfig)

    def validate(self) -> None:
        """Reject malformed values before any planning work is done."""
        _check_speed(self.speed)
        if not math.isfinite(self.height) or self.height <= 0.0:
            raise InvalidInputError(f"body height must be positive, got {self.height!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise InvalidInputError(f"number of steps must be a positive integer, got {self.n_steps!r}")
        if not math.isfinite(self.dt) or self.dt <= 0.0:
            raise InvalidInputError(f"dt must be positive, got {self.dt!r}")
        if self.output_format not in ("csv", "json"):
            raise InvalidInputError(f"output format must be csv or json, got {self.output_format!r}")


@dataclass
class GaitTrajectory:
    """Uniformly sampled planner output.

    `samples` maps every name in :data:`COLUMNS` to a 1-D array; the contact
    columns are boolean.
    """

    metadata: dict
    samples: dict[str, np.ndarray]
    params: StepParameters | None = None
    body: BodyModel | None = None
    timeline: StepTimeline | None = None
    footsteps: FootstepPlan | None = None

    def __len__(self) -> int:
        return len(self.samples["t"])

    @property
    def step_time(self) -> float:
        return float(self.metadata["t_step"])

    def rows(self):
        cols = [self.samples[c] for c in COLUMNS]
        for i in range(len(self)):
            yield tuple(col[i] for col in cols)


@contextmanager
def _stage(name: str):
    # tag planner errors with the module that raised them
    try:
        yield
    except GaitPlanError as exc:
        if getattr(exc, "stage", None) is None:
            exc.stage = name
        raise


def empty_samples() -> dict[str, np.ndarray]:
    return {c: np.zeros(0, dtype=bool if c in BOOL_COLUMNS else float) for c in COLUMNS}


def sample_times(step_time: float, n_steps: int, dt: float) -> np.ndarray:
    n = math.ceil(n_steps * step_time / dt) + 1
    return np.arange(n, dtype=float) * dt


def plan_gait(cfg: RunConfig) -> GaitTrajectory:
    """Regress parameters, build the body, solve the step timeline, place the
    footsteps and sample everything every ``cfg.dt`` seconds from ``t = 0``."""
    cfg.validate()
    icfg = cfg.interpretation
    with _stage("gait_parameters"):
        sp = regress_gait_parameters(cfg.speed, icfg)
        bm = derive_body_geometry(cfg.height, sp.step_width)
    with _stage("com_planner"):
        tl = plan_timeline(sp, bm, icfg)
    if cfg.dt >= sp.step_time / 10.0:
        raise InvalidInputError(
            f"dt = {cfg.dt:g} s gives fewer than 10 samples per step (t_step = {sp.step_time:.6g} s)"
        )

    t = sample_times(sp.step_time, cfg.n_steps, cfg.dt)
    # one footstep behind the start and enough ahead to cover the last swing
    plan = plan_footsteps(sp, tl, int(cfg.n_steps) + 4, first_index=-1)
    x_com, y_com = com_transverse(t, sp)
    z_com = com_vertical(t, tl, icfg)
    with _stage("foot_planner"):
        x_l, c_l = foot_track(t, Side.LEFT, plan)
        x_r, c_r = foot_track(t, Side.RIGHT, plan)
    half = 0.5 * sp.step_width
    samples = {
        "t": t,
        "x_com": x_com,
        "y_com": y_com,
        "z_com": z_com,
        "x_vcor_l": x_l,
        "y_vcor_l": np.full_like(t, half),
        "x_vcor_r": x_r,
        "y_vcor_r": np.full_like(t, -half),
        "left_contact": c_l,
        "right_contact": c_r,
    }
    metadata = {
        "schema_version": SCHEMA_VERSION,
        "v_w": sp.speed,
        "h_body": bm.height,
        "dt": cfg.dt,
        "n_steps": int(cfg.n_steps),
        "t_step": sp.step_time,
        "t_hs0": tl.heel_strike,
        "t_to_end": tl.toe_off_end,
        "a_y": sp.lateral_amplitude,
        "a_z": tl.vertical_amplitude,
        "z_max": tl.max_height,
        **icfg.as_dict(),
    }
    return GaitTrajectory(metadata, samples, sp, bm, tl, plan)
