"""End-to-end checks of the command-line drivers (subprocess level)."""

import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

SRC = Path(__file__).resolve().parent.parent / "src"

FAST_DELAY = ["--tau-min-fs", "-13.5", "--tau-max-fs", "13.5", "--tau-steps", "201"]


def run_cli(args, cwd, env_extra=None):
    env = os.environ.copy()
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    env.pop("PARITYSIM_OUTDIR", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "paritysim", *args],
        cwd=cwd,
        env=env,
        capture_output=True,
        text=True,
    )


def read_kv(path):
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        key, _, value = line.partition("=")
        out[key] = value
    return out


def test_psmzi_writes_the_adverted_files(tmp_path):
    proc = run_cli(["psmzi", "--outdir", "out", *FAST_DELAY], tmp_path)
    assert proc.returncode == 0, proc.stderr
    out = tmp_path / "out"
    assert (out / "psmzi.csv").is_file()
    assert (out / "psmzi_summary.txt").is_file()
    assert (out / "psmzi_config.txt").is_file()
    assert (out / "psmzi.png").stat().st_size > 0

    raw = (out / "psmzi.csv").read_bytes()
    assert b"\r" not in raw  # LF line endings only
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "tau_s,g2_normalized,g2_raw"
    assert len(lines) == 1 + 201
    first = [float(v) for v in lines[1].split(",")]
    assert first[0] == pytest.approx(-13.5e-15)

    summary = read_kv(out / "psmzi_summary.txt")
    assert summary["experiment"] == "psmzi"
    assert summary["extremum_kind"] == "dip"
    assert float(summary["baseline"]) == pytest.approx(1.0, abs=1e-6)
    assert float(summary["g2_normalized_near_tau0"]) == pytest.approx(0.0, abs=1e-9)


def test_mzi_is_parity_blind_to_the_plate(tmp_path):
    base = run_cli(["mzi", "--outdir", "a", *FAST_DELAY], tmp_path)
    turned = run_cli(
        ["mzi", "--outdir", "b", "--plate-theta", "1.5707963267948966", *FAST_DELAY],
        tmp_path,
    )
    assert base.returncode == 0 and turned.returncode == 0
    rows_a = np.loadtxt(tmp_path / "a" / "mzi.csv", delimiter=",", skiprows=1)
    rows_b = np.loadtxt(tmp_path / "b" / "mzi.csv", delimiter=",", skiprows=1)
    np.testing.assert_allclose(rows_a[:, 1], rows_b[:, 1], atol=1e-10)


def test_repeated_runs_are_byte_identical(tmp_path):
    for d in ("one", "two"):
        proc = run_cli(["psmzi", "--outdir", d, *FAST_DELAY], tmp_path)
        assert proc.returncode == 0, proc.stderr
    for name in ("psmzi.csv", "psmzi_summary.txt"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_config_echo_reproduces_the_run(tmp_path):
    first = run_cli(["psmzi", "--outdir", "orig", *FAST_DELAY, "--plate-theta", "0.7"], tmp_path)
    assert first.returncode == 0, first.stderr
    second = run_cli(
        ["psmzi", "--config", "orig/psmzi_config.txt", "--outdir", "redo"], tmp_path
    )
    assert second.returncode == 0, second.stderr
    assert (tmp_path / "orig" / "psmzi.csv").read_bytes() == (
        tmp_path / "redo" / "psmzi.csv"
    ).read_bytes()
    assert (tmp_path / "orig" / "psmzi_summary.txt").read_bytes() == (
        tmp_path / "redo" / "psmzi_summary.txt"
    ).read_bytes()


def test_config_echo_lists_every_field(tmp_path):
    proc = run_cli(["concurrence", "--outdir", "out", "--no-plot"], tmp_path)
    assert proc.returncode == 0, proc.stderr
    cfg = read_kv(tmp_path / "out" / "concurrence_config.txt")
    expected = {
        "experiment", "pump_wavelength_nm", "filter_center_nm", "filter_fwhm_nm",
        "plate_theta", "tau_min_s", "tau_max_s", "tau_steps", "theta_min",
        "theta_max", "theta_steps", "grid_n", "grid_half_width", "omega_nodes",
        "word_count", "max_word_len", "seed", "crystal_thickness_mm", "outdir", "plot",
    }
    assert set(cfg) == expected


def test_config_for_wrong_experiment_is_refused(tmp_path):
    proc = run_cli(["psmzi", "--outdir", "out", *FAST_DELAY], tmp_path)
    assert proc.returncode == 0
    cross = run_cli(["mzi", "--config", "out/psmzi_config.txt"], tmp_path)
    assert cross.returncode == 3
    assert "experiment" in cross.stderr


def test_femtosecond_flags_convert_to_seconds(tmp_path):
    proc = run_cli(
        ["mzi", "--outdir", "out", "--tau-min-fs", "-20", "--tau-max-fs", "20",
         "--tau-steps", "301"],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    cfg = read_kv(tmp_path / "out" / "mzi_config.txt")
    assert float(cfg["tau_min_s"]) == pytest.approx(-2e-14)
    assert float(cfg["tau_max_s"]) == pytest.approx(2e-14)


def test_second_and_femtosecond_flags_are_exclusive(tmp_path):
    proc = run_cli(["mzi", "--tau-min-s", "-1e-13", "--tau-min-fs", "-100"], tmp_path)
    assert proc.returncode == 2


def test_unknown_subcommand_is_a_usage_error(tmp_path):
    proc = run_cli(["frobnicate"], tmp_path)
    assert proc.returncode == 2


def test_domain_errors_exit_with_three(tmp_path):
    proc = run_cli(["psmzi", "--tau-steps", "1", "--outdir", "out"], tmp_path)
    assert proc.returncode == 3
    proc = run_cli(["psmzi", "--grid-n", "511", "--outdir", "out", *FAST_DELAY], tmp_path)
    assert proc.returncode == 3


def test_unwritable_outdir_exits_with_four(tmp_path):
    (tmp_path / "blocked").write_text("a file, not a directory", encoding="utf-8")
    proc = run_cli(["concurrence", "--outdir", "blocked", "--no-plot"], tmp_path)
    assert proc.returncode == 4


def test_outdir_environment_variable_and_flag_precedence(tmp_path):
    via_env = run_cli(
        ["concurrence", "--no-plot"], tmp_path, env_extra={"PARITYSIM_OUTDIR": "from_env"}
    )
    assert via_env.returncode == 0, via_env.stderr
    assert (tmp_path / "from_env" / "concurrence.csv").is_file()

    flag_wins = run_cli(
        ["concurrence", "--no-plot", "--outdir", "from_flag"],
        tmp_path,
        env_extra={"PARITYSIM_OUTDIR": "ignored_env"},
    )
    assert flag_wins.returncode == 0, flag_wins.stderr
    assert (tmp_path / "from_flag" / "concurrence.csv").is_file()
    assert not (tmp_path / "ignored_env").exists()


def test_no_plot_skips_the_figure(tmp_path):
    proc = run_cli(["psmzi", "--outdir", "out", "--no-plot", *FAST_DELAY], tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert not (tmp_path / "out" / "psmzi.png").exists()


def test_theta_sweep_schema_and_aliases(tmp_path):
    proc = run_cli(
        ["theta-sweep", "--outdir", "out", "--min", "0", "--max", "6.283185307179586",
         "--theta-steps", "25"],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    lines = (tmp_path / "out" / "theta_sweep.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "theta_rad,g2_at_tau0"
    assert len(lines) == 1 + 25
    cfg = read_kv(tmp_path / "out" / "theta_sweep_config.txt")
    assert float(cfg["theta_max"]) == pytest.approx(2.0 * np.pi)
    rows = np.loadtxt(tmp_path / "out" / "theta_sweep.csv", delimiter=",", skiprows=1)
    np.testing.assert_allclose(rows[:, 1], 2.0 * np.sin(rows[:, 0] / 2.0) ** 2, atol=1e-9)


def test_concurrence_run_reports_tiny_deviations(tmp_path):
    proc = run_cli(["concurrence", "--outdir", "out", "--no-plot"], tmp_path)
    assert proc.returncode == 0, proc.stderr
    summary = read_kv(tmp_path / "out" / "concurrence_summary.txt")
    assert float(summary["max_abs_dev_i_family"]) < 1e-10
    assert float(summary["max_abs_dev_real_family"]) < 1e-10
    lines = (tmp_path / "out" / "concurrence.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "theta_rad,concurrence_i_family,concurrence_real_family"


def test_isomorphism_run_is_seeded_and_within_tolerance(tmp_path):
    a = run_cli(["isomorphism", "--outdir", "a", "--words", "20", "--no-plot"], tmp_path)
    b = run_cli(["isomorphism", "--outdir", "b", "--words", "20", "--no-plot"], tmp_path)
    other = run_cli(
        ["isomorphism", "--outdir", "c", "--words", "20", "--seed", "8", "--no-plot"],
        tmp_path,
    )
    assert a.returncode == b.returncode == other.returncode == 0
    csv_a = (tmp_path / "a" / "isomorphism.csv").read_bytes()
    assert csv_a == (tmp_path / "b" / "isomorphism.csv").read_bytes()
    assert csv_a != (tmp_path / "c" / "isomorphism.csv").read_bytes()
    summary = read_kv(tmp_path / "a" / "isomorphism_summary.txt")
    assert summary["all_within_tolerance"] == "true"
    assert float(summary["max_residual"]) < 1e-8
