"""Exception types raised by the planner."""


class GaitPlanError(Exception):
    """Base class for every planner failure."""


class InvalidInputError(GaitPlanError, ValueError):
    """An input is non-finite, non-positive, or otherwise malformed."""


class SpeedRangeError(InvalidInputError):
    """Walking speed outside the validated interval under the reject policy."""

    def __init__(self, speed, interval):
        self.speed = speed
        self.interval = interval
        lo, hi = interval
        super().__init__(
            f"walking speed {speed:g} m/s is outside the validated range "
            f"[{lo:g}, {hi:g}] m/s"
        )


class SpeedRangeWarning(UserWarning):
    """Walking speed outside the validated interval under the warn policy."""


class GeometryError(GaitPlanError):
    """A square root of a negative quantity was required."""


class SingularityError(GaitPlanError):
    """A denominator vanished (or nearly so)."""


class NoRootError(GaitPlanError):
    """The heel-strike residual does not change sign on the bracket."""

    def __init__(self, bracket, residuals):
        self.bracket = bracket
        self.residuals = residuals
        (a, b), (fa, fb) = bracket, residuals
        super().__init__(
            f"no sign change of the heel-strike residual on [{a:.6g}, {b:.6g}] s: "
            f"residual({a:.6g}) = {fa:.6g} m, residual({b:.6g}) = {fb:.6g} m"
        )


class InsufficientDataError(GaitPlanError):
    """Not enough samples to perform the requested measurement."""


class SingularFitError(GaitPlanError):
    """The least-squares design matrix is rank deficient."""
