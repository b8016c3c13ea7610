"""Command-line entry point: ``gaitplan plan|sweep|validate|fit``.

Settings resolve as command-line flag > config file > built-in default. The
config file is given with ``--config`` or the ``GAITPLAN_CONFIG`` environment
variable and holds flat ``key=value`` lines keyed by flag name without dashes
(``zmode=as_written``, ``range_policy=reject``, ...).

Exit status: 0 success, 1 usage or input error, 2 computation or I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings

from . import io as gio
from .analysis import desired_amplitudes, fit_polynomial, speed_sweep
from .config import (
    AnkleShiftSource,
    HeelStrikeFrame,
    InterpretationConfig,
    LandingDistanceMode,
    SpeedRangePolicy,
    VerticalPhaseMode,
    ZMaxMode,
)
from .errors import GaitPlanError, InvalidInputError
from .trajectory import RunConfig, plan_gait

log = logging.getLogger("gaitplan")

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2
CONFIG_ENV = "GAITPLAN_CONFIG"

# amplitude tolerances of the validate report [m]
LATERAL_TOL = 0.010
VERTICAL_TOL = 0.015


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; route it through our exit codes instead
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _speed_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected min:step:max, got {text!r}")
    try:
        lo, step, hi = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric speed range {text!r}") from None
    return lo, step, hi


def _choices(enum_type) -> list[str]:
    return [m.value for m in enum_type]


# dest -> (converter, default); converters are shared by flags and config file
SETTINGS = {
    "speed": (float, 1.2),
    "height": (float, 1.71),
    "steps": (int, 4),
    "dt": (float, 0.005),
    "format": (str, "csv"),
    "out": (str, None),
    "speeds": (_speed_range, (0.6, 0.2, 2.2)),
    "z_mode": (str, VerticalPhaseMode.CONTINUOUS.value),
    "zmax_mode": (str, ZMaxMode.SQUARED.value),
    "dxank": (str, AnkleShiftSource.ANKLE_HEEL.value),
    "range_policy": (str, SpeedRangePolicy.WARN.value),
    "hs_frame": (str, HeelStrikeFrame.SYMMETRIC.value),
    "landing_mode": (str, LandingDistanceMode.AS_WRITTEN.value),
    "input": (str, None),
    "degree": (int, 2),
    "xcol": (str, "x"),
    "ycol": (str, "y"),
}
_CONFIG_KEYS = {gio.normalize_key(k): k for k in SETTINGS}


def _add_interpretation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--z-mode", dest="z_mode", choices=_choices(VerticalPhaseMode))
    p.add_argument("--zmax-mode", dest="zmax_mode", choices=_choices(ZMaxMode))
    p.add_argument("--dxank", choices=_choices(AnkleShiftSource), help="ankle offset used for the vertical time shift")
    p.add_argument("--range-policy", dest="range_policy", choices=_choices(SpeedRangePolicy))
    p.add_argument("--hs-frame", dest="hs_frame", choices=_choices(HeelStrikeFrame), help="heel-strike frame convention")
    p.add_argument("--landing-mode", dest="landing_mode", choices=_choices(LandingDistanceMode))


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps unset flags out of the namespace so config values can show through
    parser = _Parser(prog="gaitplan", description="Closed-form CoM and footstep planner for human walking.")
    parser.add_argument("--config", help=f"key=value settings file (default: ${CONFIG_ENV})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = dict(argument_default=argparse.SUPPRESS)

    p = sub.add_parser("plan", help="sample CoM and foot trajectories", **common)
    p.add_argument("--speed", type=float, help="walking speed [m/s]")
    p.add_argument("--height", type=float, help="body height [m]")
    p.add_argument("--steps", type=int, help="number of steps to sample")
    p.add_argument("--dt", type=float, help="sample period [s]")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output file (default: stdout)")
    _add_interpretation(p)

    for name, text in (("sweep", "gait-phase table over a speed range"), ("validate", "amplitudes vs reference")):
        p = sub.add_parser(name, help=text, **common)
        p.add_argument("--speeds", type=_speed_range, help="min:step:max [m/s]")
        p.add_argument("--height", type=float)
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out")
        _add_interpretation(p)

    p = sub.add_parser("fit", help="least-squares polynomial fit of two CSV columns", **common)
    p.add_argument("--input", help="CSV file with a header row")
    p.add_argument("--degree", type=int)
    p.add_argument("--xcol")
    p.add_argument("--ycol")
    p.add_argument("--out")
    return parser


def load_config(path: str | None) -> dict:
    """Typed settings from a config file; unknown keys are input errors."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        raw = gio.read_config_file(path)
    except OSError as exc:
        raise InvalidInputError(f"cannot read config file {path}: {exc.strerror or exc}") from exc
    out = {}
    for key, text in raw.items():
        if key not in _CONFIG_KEYS:
            raise InvalidInputError(f"{path}: unknown setting {key!r}")
        dest = _CONFIG_KEYS[key]
        try:
            out[dest] = SETTINGS[dest][0](text)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise InvalidInputError(f"{path}: bad value for {key!r}: {exc}") from None
    return out


def resolve(args: argparse.Namespace, config: dict) -> dict:
    settings = {k: default for k, (_, default) in SETTINGS.items()}
    settings.update(config)
    settings.update({k: v for k, v in vars(args).items() if k in SETTINGS})
    return settings


def interpretation(s: dict) -> InterpretationConfig:
    return InterpretationConfig(
        z_phase_mode=s["z_mode"],
        zmax_mode=s["zmax_mode"],
        ankle_shift_source=s["dxank"],
        speed_range_policy=s["range_policy"],
        heel_strike_frame=s["hs_frame"],
        landing_distance_mode=s["landing_mode"],
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        gio.atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_plan(s: dict) -> None:
    cfg = RunConfig(
        speed=s["speed"],
        height=s["height"],
        n_steps=s["steps"],
        dt=s["dt"],
        output_format=s["format"],
        output_path=s["out"],
        interpretation=interpretation(s),
    )
    traj = plan_gait(cfg)
    text = gio.trajectory_to_csv(traj) if cfg.output_format == "csv" else gio.trajectory_to_json(traj)
    _emit(text, cfg.output_path)
    log.info("planned %d samples over %d steps", len(traj), cfg.n_steps)


def _report(records: list[dict], s: dict) -> None:
    if s["format"] == "json":
        _emit(gio.records_to_json(records), s["out"])
    else:
        _emit(gio.records_to_csv(records), s["out"])


def cmd_sweep(s: dict) -> None:
    lo, step, hi = s["speeds"]
    rows = speed_sweep(lo, hi, step, height=s["height"], cfg=interpretation(s))
    _report(
        [
            {
                "v_w": m.speed,
                "ds_pct_gc": m.double_support_pct,
                "contact_pct_gc": m.contact_pct,
                "a_y": m.lateral_amplitude,
                "a_z": m.vertical_amplitude,
            }
            for m in rows
        ],
        s,
    )


def cmd_validate(s: dict) -> None:
    lo, step, hi = s["speeds"]
    records = []
    for m in speed_sweep(lo, hi, step, height=s["height"], cfg=interpretation(s)):
        ay_ref, az_ref = desired_amplitudes(m.speed)
        ay_err = m.lateral_amplitude - ay_ref
        az_err = m.vertical_amplitude - az_ref
        records.append(
            {
                "v_w": m.speed,
                "a_y": m.lateral_amplitude,
                "a_y_ref": ay_ref,
                "a_y_err": ay_err,
                "a_y_ok": abs(ay_err) <= LATERAL_TOL,
                "a_z": m.vertical_amplitude,
                "a_z_ref": az_ref,
                "a_z_err": az_err,
                "a_z_ok": abs(az_err) <= VERTICAL_TOL,
            }
        )
    _report(records, s)


def cmd_fit(s: dict) -> None:
    if not s["input"]:
        raise UsageError("gaitplan fit: error: --input is required")
    try:
        pairs = gio.read_columns(s["input"], s["xcol"], s["ycol"])
    except OSError as exc:
        raise InvalidInputError(f"cannot read {s['input']}: {exc.strerror or exc}") from exc
    fit = fit_polynomial(pairs, s["degree"])
    record = {"degree": fit.degree, "r_squared": fit.r_squared}
    record.update({f"c{i}": c for i, c in enumerate(fit.coefficients)})
    _emit(gio.records_to_csv([record]), s["out"])


COMMANDS = {"plan": cmd_plan, "sweep": cmd_sweep, "validate": cmd_validate, "fit": cmd_fit}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        settings = resolve(args, load_config(args.config))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            COMMANDS[args.command](settings)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InvalidInputError as exc:
        print(f"gaitplan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GaitPlanError as exc:
        stage = getattr(exc, "stage", None)
        where = f" [{stage}]" if stage else ""
        print(f"gaitplan: computation failed{where}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"gaitplan: I/O error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
