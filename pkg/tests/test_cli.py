"""CLI surface: exit codes, artifact formats, reproducibility."""

import json
import math
import xml.etree.ElementTree as ET

import pytest

from ulheat import __version__
from ulheat.cli import main


def write_config(path, cfg):
    path.write_text(json.dumps(cfg))
    return str(path)


SOLVE_CFG = {
    "domain": "halfline", "L": 3.0, "h": 0.01, "p": 2.0,
    "u0": {"profile": "constant", "lam": 1.0}, "horizon": 0.05,
    "norms": [[2, 1]],
}

SWEEP_CFG = {
    "kind": "lambda_sweep_large", "p": 2.0,
    "lambda_grid": [2.0, 4.76, 11.3, 26.9, 64.0],
    "grid_h": 0.002, "truncation": 0.2,
}


def test_solve_artifacts(tmp_path):
    cfg = write_config(tmp_path / "c.json", {**SOLVE_CFG, "snapshot_dt": 0.02})
    out = tmp_path / "out"
    assert main(["solve", cfg, "--out", str(out), "--plot"]) == 0
    lines = (out / "history.csv").read_text().splitlines()
    assert lines[0] == "t,sup_norm,uloc_2_1"
    assert len(lines) > 10
    assert (out / "snapshot_000.csv").read_text().splitlines()[0] == "x,u"
    report = json.loads((out / "report.json").read_text())
    assert report["tool"] == "ulheat"
    assert report["version"] == __version__
    assert report["command"] == "solve"
    assert report["config"]["p"] == 2.0
    assert report["config"]["flux"] is True  # default made explicit
    assert report["wall_clock_seconds"] >= 0.0
    ET.fromstring((out / "plot.svg").read_text())  # well-formed


def test_zero_data_history_is_all_zero(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 2.0, "h": 0.05, "p": 2.0,
        "u0": {"profile": "constant", "lam": 0.0}, "horizon": 0.01})
    out = tmp_path / "out"
    assert main(["solve", cfg, "--out", str(out)]) == 0
    lines = (out / "history.csv").read_text().splitlines()[1:]
    assert lines
    assert all(line.split(",")[1] == "0" for line in lines)


def test_sweep_artifacts_and_reproducibility(tmp_path):
    cfg = write_config(tmp_path / "c.json", SWEEP_CFG)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["sweep", cfg, "--out", str(out1), "--plot"]) == 0
    assert main(["sweep", cfg, "--out", str(out2), "--plot", "--jobs", "3"]) == 0
    csv1 = (out1 / "sweep.csv").read_bytes()
    assert csv1 == (out2 / "sweep.csv").read_bytes()
    assert (out1 / "summary.json").read_bytes() == (out2 / "summary.json").read_bytes()
    assert (out1 / "plot.svg").read_bytes() == (out2 / "plot.svg").read_bytes()

    lines = csv1.decode().splitlines()
    assert lines[0] == "lambda,T_hat,T_err,h,status"
    assert len(lines) == 6  # header + one row per amplitude
    summary = json.loads((out1 / "summary.json").read_text())
    assert set(summary) == {"slope", "stderr", "expected_exponent", "pass"}
    assert summary["expected_exponent"] == -2.0
    assert summary["pass"] is True
    assert abs(summary["slope"] + 2.0) < 0.3


def test_blowup_time_reports_estimate(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 3.0, "h": 0.004, "p": 2.0,
        "u0": {"profile": "constant", "lam": 1.0}, "horizon": 0.5})
    out = tmp_path / "out"
    assert main(["blowup-time", cfg, "--out", str(out)]) == 0
    res = json.loads((out / "report.json").read_text())["results"]
    assert math.isclose(res["T_hat"], 0.17632299, rel_tol=1e-6)
    assert res["T_bracket"][0] < res["T_hat"] < res["T_bracket"][1]


def test_scaling_check_ratio_near_one(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 3.0, "h": 0.01, "p": 2.0,
        "u0": {"profile": "constant", "lam": 1.0}, "mu": 2.0})
    out = tmp_path / "out"
    assert main(["scaling-check", cfg, "--out", str(out)]) == 0
    res = json.loads((out / "report.json").read_text())["results"]
    assert abs(res["ratio"] - 1.0) < 0.02


def test_ulnorm_value(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 10.0, "h": 0.01,
        "u0": {"profile": "constant", "lam": 1.0}, "r": 2, "rho": 1})
    out = tmp_path / "out"
    assert main(["ulnorm", cfg, "--out", str(out)]) == 0
    res = json.loads((out / "report.json").read_text())["results"]
    assert math.isclose(res["value"], 1.4106735979665885, rel_tol=1e-12)


def test_schema_error_bad_p(tmp_path):
    cfg = write_config(tmp_path / "c.json", {**SOLVE_CFG, "p": 0.5})
    assert main(["solve", cfg, "--out", str(tmp_path / "o")]) == 2


def test_schema_error_unknown_key_names_field(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.json", {**SOLVE_CFG, "bogus": 1})
    assert main(["solve", cfg, "--out", str(tmp_path / "o")]) == 2
    assert "bogus" in capsys.readouterr().err


def test_schema_error_nested_field_path(tmp_path, capsys):
    bad = dict(SOLVE_CFG)
    bad["u0"] = {"profile": "gaussian", "lam": 1.0, "wdith": 0.5}
    cfg = write_config(tmp_path / "c.json", bad)
    assert main(["solve", cfg, "--out", str(tmp_path / "o")]) == 2
    assert "u0.wdith" in capsys.readouterr().err


def test_schema_error_malformed_json(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{not json")
    assert main(["solve", str(path), "--out", str(tmp_path / "o")]) == 2


def test_hypothesis_error_exit_code(tmp_path, capsys):
    # beta at the excluded endpoint 1/(p-1) for p at the critical value
    cfg = write_config(tmp_path / "c.json", {
        "kind": "lambda_sweep_small", "p": 2.0, "beta": 1.0,
        "lambda_grid": [0.001, 0.0032, 0.01, 0.032, 0.1]})
    assert main(["sweep", cfg, "--out", str(tmp_path / "o")]) == 3
    assert "theorem hypothesis violated" in capsys.readouterr().err


def test_io_error_missing_config(tmp_path):
    assert main(["solve", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "o")]) == 4


def test_io_error_unwritable_output(tmp_path):
    cfg = write_config(tmp_path / "c.json", SOLVE_CFG)
    assert main(["solve", cfg, "--out", "/proc/not-writable"]) == 4


def test_numerical_failure_no_blow_up(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 2.0, "h": 0.05, "p": 2.0,
        "u0": {"profile": "constant", "lam": 0.01}, "horizon": 0.01})
    assert main(["blowup-time", cfg, "--out", str(tmp_path / "o")]) == 5
    assert "no blow-up" in capsys.readouterr().err


def test_jobs_env_override(tmp_path, monkeypatch):
    cfg = write_config(tmp_path / "c.json", SWEEP_CFG)
    monkeypatch.setenv("ULHEAT_JOBS", "not-a-number")
    assert main(["sweep", cfg, "--out", str(tmp_path / "o")]) == 2
    monkeypatch.setenv("ULHEAT_JOBS", "2")
    assert main(["sweep", cfg, "--out", str(tmp_path / "o")]) == 0


def test_compare_orders_fields(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 2.0, "h": 0.01, "p": 2.0,
        "u0_low": {"profile": "gaussian", "lam": 0.5, "width": 0.5},
        "u0_high": {"profile": "constant", "lam": 1.0}, "horizon": 0.02})
    out = tmp_path / "out"
    assert main(["compare", cfg, "--out", str(out)]) == 0
    res = json.loads((out / "report.json").read_text())["results"]
    assert res["ordered"] is True

    bad = write_config(tmp_path / "d.json", {
        "domain": "halfline", "L": 2.0, "h": 0.01, "p": 2.0,
        "u0_low": {"profile": "constant", "lam": 2.0},
        "u0_high": {"profile": "constant", "lam": 1.0}, "horizon": 0.02})
    assert main(["compare", bad, "--out", str(tmp_path / "o2")]) == 2


def test_decay_check_reports_bounded_product(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "domain": "halfline", "L": 8.0, "h": 0.05, "p": 3.0,
        "u0": {"profile": "gaussian", "lam": 0.3, "width": 1.0}, "horizon": 5.0})
    out = tmp_path / "out"
    assert main(["decay-check", cfg, "--out", str(out)]) == 0
    res = json.loads((out / "report.json").read_text())["results"]
    assert res["status"] == "global_by_horizon"
    assert res["decay_sup"] > 0.0
