"""Task-space gait planner for straight walking at constant speed.

The planner turns a walking speed and a body height into centre-of-mass
and foot (vCoR) trajectories, plus the contact timeline, and provides the
analysis helpers used to check the results against human reference data.
"""

from .analysis import (
    GaitMetrics,
    PolyFit,
    desired_amplitudes,
    extract_amplitudes,
    fit_polynomial,
    gait_phase_metrics,
    speed_sweep,
)
from .com import (
    HeelStrikeGeometry,
    StepTimeline,
    com_transverse,
    com_vertical,
    heel_strike_residual,
    plan_timeline,
    solve_heel_strike_time,
    vertical_amplitude,
    z_max,
)
from .config import (
    AnkleShiftSource,
    HeelStrikeFrame,
    InterpretationConfig,
    LandingDistanceMode,
    SpeedRangePolicy,
    VerticalPhaseMode,
    ZMaxMode,
)
from .errors import (
    GaitPlanError,
    GeometryError,
    InsufficientDataError,
    InvalidInputError,
    NoRootError,
    SingularFitError,
    SingularityError,
    SpeedRangeError,
    SpeedRangeWarning,
)
from .feet import (
    ContactState,
    Footstep,
    FootstepPlan,
    Side,
    contact_state,
    plan_footsteps,
    saddle_slope,
    swing_displacement,
    vcor_x,
)
from .parameters import (
    BodyModel,
    RangeStatus,
    StepParameters,
    derive_body_geometry,
    regress_gait_parameters,
    validate_speed_range,
)
from .trajectory import GaitTrajectory, RunConfig, plan_gait

__version__ = "0.1.0"
