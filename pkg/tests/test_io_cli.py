import csv
import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaitplan import RunConfig, plan_gait
from gaitplan.cli import main
from gaitplan.io import (
    export_csv,
    export_json,
    parse_trajectory_json,
    read_config_file,
    read_csv,
    trajectory_to_csv,
)
from gaitplan.trajectory import COLUMNS, GaitTrajectory, empty_samples

HEADER = ",".join(COLUMNS)


@pytest.fixture(scope="module")
def traj():
    return plan_gait(RunConfig(speed=1.2, height=1.71, n_steps=4, dt=0.005))


def _data_lines(path):
    return [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]


def test_sample_count(traj):
    assert len(traj) == 368
    t = traj.samples["t"]
    assert np.all(np.diff(t) > 0)
    assert np.allclose(np.diff(t), 0.005, atol=1e-15)


def test_csv_round_trip_is_bit_exact(traj, tmp_path):
    path = tmp_path / "t.csv"
    export_csv(traj, path)
    back = read_csv(path)
    for name in COLUMNS:
        assert back.samples[name].dtype == traj.samples[name].dtype
        assert np.array_equal(back.samples[name], traj.samples[name])
    assert back.metadata["t_hs0"] == traj.metadata["t_hs0"]
    assert back.metadata["n_steps"] == 4


def test_csv_layout(traj, tmp_path):
    path = tmp_path / "t.csv"
    export_csv(traj, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "# schema_version=1"
    data = _data_lines(path)
    assert data[0] == HEADER
    assert len(data) == 369
    assert "true" not in raw.decode().lower()
    for row in csv.reader(data[1:]):
        assert row[-2] in ("0", "1") and row[-1] in ("0", "1")


def test_empty_trajectory_writes_header_only(tmp_path):
    path = tmp_path / "e.csv"
    export_csv(GaitTrajectory({"schema_version": "1"}, empty_samples()), path)
    assert path.read_text() == f"# schema_version=1\n{HEADER}\n"
    assert len(read_csv(path)) == 0


def test_json_mirrors_csv(traj, tmp_path):
    path = tmp_path / "t.json"
    export_json(traj, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"metadata", "samples"}
    assert list(doc["samples"][0]) == list(COLUMNS)
    assert isinstance(doc["samples"][0]["left_contact"], bool)
    back = parse_trajectory_json(path.read_text())
    for name in COLUMNS:
        assert np.array_equal(back.samples[name], traj.samples[name])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=20))
def test_float_round_trip(values):
    samples = empty_samples()
    n = len(values)
    for name in COLUMNS:
        samples[name] = np.array(values, dtype=float) if name not in ("left_contact", "right_contact") else np.ones(n, bool)
    src = GaitTrajectory({}, samples)
    from gaitplan.io import parse_trajectory_csv

    back = parse_trajectory_csv(trajectory_to_csv(src))
    assert np.array_equal(back.samples["x_com"], samples["x_com"])


def test_config_file_parsing(tmp_path):
    cfg = tmp_path / "g.conf"
    cfg.write_text("# comment\nspeed = 1.4\n\nz-mode=as_written  # trailing\nrange_policy=reject\n")
    assert read_config_file(cfg) == {"speed": "1.4", "zmode": "as_written", "rangepolicy": "reject"}


# -- command line ---------------------------------------------------------


def test_plan_writes_file(tmp_path):
    out = tmp_path / "t.csv"
    code = main(["plan", "--speed", "1.2", "--height", "1.71", "--steps", "4", "--dt", "0.005",
                 "--format", "csv", "--out", str(out)])
    assert code == 0
    assert len(_data_lines(out)) == 369


def test_plan_rejects_negative_speed(capsys):
    assert main(["plan", "--speed", "-1"]) == 1
    assert "[0.6, 2.2]" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["plan", "--bogus"], ["launch"], [], ["plan", "--speed", "fast"]])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert "usage" in capsys.readouterr().err


def test_config_violation_exit_1(capsys):
    assert main(["plan", "--dt", "0.2"]) == 1
    assert "10 samples" in capsys.readouterr().err


def test_computation_error_exit_2(capsys):
    # an implausibly short body cannot reach its own step width
    assert main(["plan", "--height", "0.12"]) == 2
    err = capsys.readouterr().err
    assert "computation failed" in err and "gait_parameters" in err


def test_io_error_exit_2(tmp_path, capsys):
    assert main(["plan", "--out", str(tmp_path / "missing" / "t.csv")]) == 2
    assert "missing" in capsys.readouterr().err


def test_out_of_range_speed_warns(capsys):
    assert main(["plan", "--speed", "2.4", "--steps", "1"]) == 0
    assert "outside the validated range" in capsys.readouterr().err
    assert main(["plan", "--speed", "2.4", "--range-policy", "reject"]) == 1


def test_sweep_table(capsys):
    assert main(["sweep", "--speeds", "0.6:0.2:2.2", "--height", "1.71"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert len(rows) == 9
    assert list(rows[0]) == ["v_w", "ds_pct_gc", "contact_pct_gc", "a_y", "a_z"]
    assert float(rows[0]["v_w"]) == 0.6 and float(rows[-1]["v_w"]) == 2.2


def test_sweep_json(tmp_path):
    out = tmp_path / "s.json"
    assert main(["sweep", "--speeds", "1.0:0.5:2.0", "--format", "json", "--out", str(out)]) == 0
    assert [r["v_w"] for r in json.loads(out.read_text())] == [1.0, 1.5, 2.0]


def test_bad_speed_range(capsys):
    assert main(["sweep", "--speeds", "0.6-2.2"]) == 1


def test_validate_report(capsys):
    assert main(["validate", "--speeds", "0.6:0.8:2.2"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [float(r["v_w"]) for r in rows] == [0.6, 1.4, 2.2]
    assert float(rows[0]["a_y_ref"]) == pytest.approx(0.03036)
    assert float(rows[0]["a_z_ref"]) == pytest.approx(0.02352)
    assert rows[0]["a_y_ok"] in ("0", "1")


def test_fit_command(tmp_path, capsys):
    data = tmp_path / "d.csv"
    x = np.linspace(0.6, 2.2, 9)
    data.write_text("speed,width\n" + "".join(f"{a!r},{-0.009149 * a + 0.1072!r}\n" for a in x.tolist()))
    assert main(["fit", "--input", str(data), "--degree", "1", "--xcol", "speed", "--ycol", "width"]) == 0
    (row,) = csv.DictReader(capsys.readouterr().out.splitlines())
    assert float(row["c0"]) == pytest.approx(-0.009149, abs=1e-9)
    assert float(row["c1"]) == pytest.approx(0.1072, abs=1e-9)
    assert float(row["r_squared"]) == pytest.approx(1.0, abs=1e-12)


def test_fit_input_errors(tmp_path, capsys):
    data = tmp_path / "d.csv"
    data.write_text("a,b\n1,2\n2,x\n")
    assert main(["fit", "--input", str(data), "--xcol", "a", "--ycol", "b"]) == 1
    assert main(["fit", "--input", str(data), "--xcol", "a", "--ycol", "c"]) == 1
    assert main(["fit", "--input", str(tmp_path / "nope.csv")]) == 1
    assert main(["fit"]) == 1
    data.write_text("a,b\n1,2\n1,3\n1,4\n")
    assert main(["fit", "--input", str(data), "--xcol", "a", "--ycol", "b", "--degree", "1"]) == 2


def _plan_meta(path):
    meta = {}
    for ln in path.read_text().splitlines():
        if ln.startswith("# "):
            k, _, v = ln[2:].partition("=")
            meta[k] = v
    return meta


def test_config_precedence(tmp_path, monkeypatch):
    env_cfg = tmp_path / "env.conf"
    env_cfg.write_text("speed=1.4\nz_mode=as_written\nsteps=2\n")
    flag_cfg = tmp_path / "flag.conf"
    flag_cfg.write_text("speed=1.0\nsteps=3\n")
    out = tmp_path / "t.csv"

    # defaults only
    monkeypatch.delenv("GAITPLAN_CONFIG", raising=False)
    assert main(["plan", "--out", str(out)]) == 0
    meta = _plan_meta(out)
    assert (meta["v_w"], meta["z_phase_mode"], meta["n_steps"]) == ("1.2", "continuous", "4")

    # config file from the environment overrides defaults
    monkeypatch.setenv("GAITPLAN_CONFIG", str(env_cfg))
    assert main(["plan", "--out", str(out)]) == 0
    meta = _plan_meta(out)
    assert (meta["v_w"], meta["z_phase_mode"], meta["n_steps"]) == ("1.3999999999999999", "as_written", "2")

    # an explicit --config replaces the environment file
    assert main(["--config", str(flag_cfg), "plan", "--out", str(out)]) == 0
    meta = _plan_meta(out)
    assert (meta["v_w"], meta["z_phase_mode"], meta["n_steps"]) == ("1", "continuous", "3")

    # flags override everything
    assert main(["plan", "--speed", "1.6", "--z-mode", "continuous", "--out", str(out)]) == 0
    meta = _plan_meta(out)
    assert (meta["v_w"], meta["z_phase_mode"], meta["n_steps"]) == ("1.6000000000000001", "continuous", "2")


def test_bad_config_file(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("colour=blue\n")
    monkeypatch.setenv("GAITPLAN_CONFIG", str(cfg))
    assert main(["plan"]) == 1
    assert "unknown setting" in capsys.readouterr().err
    cfg.write_text("just text\n")
    assert main(["plan"]) == 1
    cfg.write_text("steps=many\n")
    assert main(["plan"]) == 1


def test_identical_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["plan", "--speed", "0.9", "--steps", "6", "--dt", "0.001", "--out"]
    assert main(argv + [str(a)]) == 0
    assert main(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    ja, jb = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + [str(ja), "--format", "json"]) == 0
    assert main(argv + [str(jb), "--format", "json"]) == 0
    assert ja.read_bytes() == jb.read_bytes()


def test_module_entry_point(tmp_path):
    out = tmp_path / "t.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "gaitplan", "plan", "--steps", "2", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    proc = subprocess.run([sys.executable, "-m", "gaitplan", "nope"], capture_output=True, text=True)
    assert proc.returncode == 1
