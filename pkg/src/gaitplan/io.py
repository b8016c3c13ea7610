"""CSV/JSON serialisation of trajectories and reports, and config files."""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import InvalidInputError
from .trajectory import BOOL_COLUMNS, COLUMNS, GaitTrajectory, empty_samples


def atomic_write(path, text: str) -> None:
    """Write `text` to `path` through a temporary file in the same directory."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _parse_meta_value(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def trajectory_to_csv(traj: GaitTrajectory) -> str:
    lines = [f"# {key}={_fmt(value)}" for key, value in traj.metadata.items()]
    lines.append(",".join(COLUMNS))
    for row in traj.rows():
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def export_csv(traj: GaitTrajectory, path) -> None:
    """Write `traj` as CSV: ``# key=value`` metadata lines, a header row,
    17-significant-digit floats and 0/1 contact flags."""
    atomic_write(path, trajectory_to_csv(traj))


def parse_trajectory_csv(text: str) -> GaitTrajectory:
    metadata = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep:
                metadata[key.strip()] = _parse_meta_value(value.strip())
        elif line.strip():
            body.append(line)
    if not body or tuple(body[0].split(",")) != COLUMNS:
        raise InvalidInputError("trajectory CSV header does not match the expected columns")
    samples = empty_samples()
    rows = [line.split(",") for line in body[1:]]
    for i, name in enumerate(COLUMNS):
        if name in BOOL_COLUMNS:
            samples[name] = np.array([r[i] == "1" for r in rows], dtype=bool)
        else:
            samples[name] = np.array([float(r[i]) for r in rows], dtype=float)
    return GaitTrajectory(metadata, samples)


def read_csv(path) -> GaitTrajectory:
    return parse_trajectory_csv(Path(path).read_text(encoding="utf-8"))


def trajectory_to_json(traj: GaitTrajectory) -> str:
    samples = []
    for row in traj.rows():
        rec = {}
        for name, value in zip(COLUMNS, row):
            rec[name] = bool(value) if name in BOOL_COLUMNS else float(value)
        samples.append(rec)
    doc = {"metadata": _plain(traj.metadata), "samples": samples}
    return json.dumps(doc, indent=1) + "\n"


def export_json(traj: GaitTrajectory, path) -> None:
    atomic_write(path, trajectory_to_json(traj))


def parse_trajectory_json(text: str) -> GaitTrajectory:
    doc = json.loads(text)
    samples = empty_samples()
    recs = doc.get("samples", [])
    for name in COLUMNS:
        dtype = bool if name in BOOL_COLUMNS else float
        samples[name] = np.array([r[name] for r in recs], dtype=dtype)
    return GaitTrajectory(dict(doc.get("metadata", {})), samples)


def _plain(mapping: dict) -> dict:
    out = {}
    for key, value in mapping.items():
        if isinstance(value, np.generic):
            value = value.item()
        out[key] = value
    return out


def records_to_csv(records: list[dict]) -> str:
    if not records:
        return ""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(records[0]))
    for rec in records:
        writer.writerow([repr(float(v)) if isinstance(v, float) else _fmt(v) for v in rec.values()])
    return buf.getvalue()


def records_to_json(records: list[dict]) -> str:
    return json.dumps([_plain(r) for r in records], indent=1) + "\n"


def read_columns(path, xcol: str, ycol: str) -> list[tuple[float, float]]:
    """Read two numeric columns of a CSV file with a header row."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(row for row in fh if not row.startswith("#"))
        if reader.fieldnames is None:
            raise InvalidInputError(f"{path}: missing header row")
        for col in (xcol, ycol):
            if col not in reader.fieldnames:
                raise InvalidInputError(f"{path}: no column {col!r} (have {', '.join(reader.fieldnames)})")
        pairs = []
        for lineno, row in enumerate(reader, start=2):
            try:
                pairs.append((float(row[xcol]), float(row[ycol])))
            except (TypeError, ValueError):
                raise InvalidInputError(f"{path}:{lineno}: non-numeric value in {xcol!r} or {ycol!r}") from None
    return pairs


def normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "").replace("_", "").lower()


def read_config_file(path) -> dict[str, str]:
    """Parse flat ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise InvalidInputError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        values[normalize_key(key)] = value.strip()
    return values
