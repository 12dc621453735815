"""Command-line driver: JSON configs in, CSV/JSON/SVG artifacts out.

Each subcommand reads one JSON config, runs the corresponding library
routine, and writes its artifacts into --out: history.csv or sweep.csv,
a report.json carrying the tool version, the fully defaulted config
echo, and the wall clock, plus plot.svg when --plot is given.  Float
cells are formatted with 12 significant digits so reruns produce byte
identical CSVs.

Exit codes: 0 success, 2 config schema error (message names the field
path), 3 theorem-hypothesis violation, 4 I/O error, 5 numerical failure
(no blow-up trend where one is required).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .domains import (
    Grid,
    InitialData,
    SampledField,
    bounded_power,
    build_grid,
    constant,
    custom,
    gaussian,
    half_line,
    half_plane,
    interval,
    power_decay,
    rectangle,
    sample_initial,
)
from .experiments import (
    ExperimentSpec,
    comparison_test,
    decay_check,
    rate_check,
    run_sweep,
    scaling_check,
    tail_slope,
)
from .solver import (
    BLOWN_UP,
    SolverConfig,
    run,
    run_with_snapshots,
)
from .svg import Figure
from .uloc import UlocParams, uloc_norm

_EXIT_SCHEMA = 2
_EXIT_HYPOTHESIS = 3
_EXIT_IO = 4
_EXIT_NUMERICAL = 5


class ConfigError(Exception):
    """Schema violation; the message starts with the offending field path."""


class NumericalFailure(Exception):
    """The run did not produce the behavior the command requires."""


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


# ---------------------------------------------------------------------------
# config parsing


def _check_keys(cfg: dict, allowed: set[str], path: str) -> None:
    for k in cfg:
        if k not in allowed:
            raise ConfigError(f"{path}{k}: unknown key")


def _get(cfg: dict, key: str, path: str, kind, required: bool = True,
         default=None):
    if key not in cfg:
        if required:
            raise ConfigError(f"{path}{key}: required key missing")
        return default
    v = cfg[key]
    if kind is float:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{path}{key}: expected a number")
        return float(v)
    if kind is int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{path}{key}: expected an integer")
        return v
    if kind is bool:
        if not isinstance(v, bool):
            raise ConfigError(f"{path}{key}: expected true or false")
        return v
    if kind is str:
        if not isinstance(v, str):
            raise ConfigError(f"{path}{key}: expected a string")
        return v
    raise AssertionError(kind)


def _get_extended(cfg: dict, key: str, path: str, required: bool = True,
                  default=None) -> float | None:
    """Number or the string "inf" (JSON has no infinity literal)."""
    if key not in cfg:
        if required:
            raise ConfigError(f"{path}{key}: required key missing")
        return default
    v = cfg[key]
    if v == "inf":
        return math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f'{path}{key}: expected a number or "inf"')
    return float(v)


_DOMAIN_KEYS = {"domain", "L", "Lx", "Ly", "h"}


def _parse_grid(cfg: dict, path: str = "") -> Grid:
    kind = _get(cfg, "domain", path, str)
    h = _get(cfg, "h", path, float)
    if kind in ("halfline", "interval"):
        L = _get(cfg, "L", path, float)
        dom = half_line(L) if kind == "halfline" else interval(L)
    elif kind in ("halfplane", "rectangle"):
        Lx = _get(cfg, "Lx", path, float)
        Ly = _get(cfg, "Ly", path, float)
        dom = half_plane(Lx, Ly) if kind == "halfplane" else rectangle(Lx, Ly)
    else:
        raise ConfigError(f"{path}domain: unknown domain {kind!r}")
    try:
        return build_grid(dom, h)
    except ValueError as e:
        raise ConfigError(f"{path}h: {e}") from e


_U0_KEYS = {"profile", "lam", "beta", "delta", "width", "center", "values"}


def _parse_u0(cfg, path: str) -> InitialData:
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: expected an object")
    path = path + "."
    _check_keys(cfg, _U0_KEYS, path)
    profile = _get(cfg, "profile", path, str)
    lam = _get(cfg, "lam", path, float, required=False, default=1.0)
    try:
        if profile == "constant":
            return constant(lam)
        if profile == "power_decay":
            return power_decay(lam, _get(cfg, "beta", path, float),
                               _get(cfg, "delta", path, float,
                                    required=False, default=1.0))
        if profile == "bounded_power":
            return bounded_power(lam, _get(cfg, "beta", path, float))
        if profile == "gaussian":
            return gaussian(lam, _get(cfg, "width", path, float),
                            _get(cfg, "center", path, float,
                                 required=False, default=0.0))
        if profile == "custom":
            if "values" not in cfg:
                raise ConfigError(f"{path}values: required key missing")
            return custom(np.asarray(cfg["values"], dtype=np.float64), lam)
    except ValueError as e:
        raise ConfigError(f"{path}profile: {e}") from e
    raise ConfigError(f"{path}profile: unknown profile {profile!r}")


def _parse_norms(cfg: dict, path: str) -> tuple:
    raw = cfg.get("norms", [])
    if not isinstance(raw, list):
        raise ConfigError(f"{path}norms: expected a list of [r, rho] pairs")
    norms = []
    for i, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"{path}norms[{i}]: expected an [r, rho] pair")
        norms.append((_get_extended({"r": pair[0]}, "r", f"{path}norms[{i}]."),
                      _get_extended({"rho": pair[1]}, "rho", f"{path}norms[{i}].")))
    return tuple(norms)


def _solver_config(cfg: dict, path: str = "") -> SolverConfig:
    p = _get(cfg, "p", path, float)
    kwargs = {}
    if "cfl" in cfg:
        kwargs["cfl"] = _get(cfg, "cfl", path, float)
    if "u_max" in cfg:
        kwargs["u_max"] = _get(cfg, "u_max", path, float)
    if "flux" in cfg:
        kwargs["flux"] = _get(cfg, "flux", path, bool)
    if "norms" in cfg:
        kwargs["norms"] = _parse_norms(cfg, path)
    try:
        return SolverConfig(p=p, **kwargs)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _echo_config(cfg: dict, filled: dict) -> dict:
    """User config with defaults made explicit, for report.json."""
    out = dict(cfg)
    for k, v in filled.items():
        out.setdefault(k, v)
    return out


# ---------------------------------------------------------------------------
# artifact writers


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise e


def _write_history(outdir: str, hist) -> None:
    cols = ["t", "sup_norm"]
    series = [hist.t, hist.sup]
    for (r, rho), vals in sorted(hist.norms.items()):
        cols.append(f"uloc_{r:g}_{rho:g}")
        series.append(vals)
    lines = [",".join(cols)]
    for row in zip(*series):
        lines.append(",".join(_fmt(v) for v in row))
    _write_text(os.path.join(outdir, "history.csv"), "\n".join(lines) + "\n")


def _write_snapshots(outdir: str, traj) -> list[dict]:
    coords = traj.grid.coords()
    meta = []
    for k in range(len(traj.t)):
        name = f"snapshot_{k:03d}.csv"
        frame = traj.frames[k]
        if traj.grid.ndim == 1:
            lines = ["x,u"]
            for x, u in zip(coords[0], frame):
                lines.append(f"{_fmt(x)},{_fmt(u)}")
        else:
            lines = ["x,y,u"]
            X, Y = coords
            for idx in np.ndindex(frame.shape):
                lines.append(f"{_fmt(X[idx])},{_fmt(Y[idx])},{_fmt(frame[idx])}")
        _write_text(os.path.join(outdir, name), "\n".join(lines) + "\n")
        meta.append({"file": name, "t": float(traj.t[k])})
    return meta


def _write_report(outdir: str, command: str, config_echo: dict,
                  results: dict, t0: float) -> None:
    report = {
        "tool": "ulheat",
        "version": __version__,
        "command": command,
        "config": config_echo,
        "wall_clock_seconds": round(time.time() - t0, 3),
        "results": results,
    }
    _write_text(os.path.join(outdir, "report.json"),
                json.dumps(report, indent=2, sort_keys=True) + "\n")


def _plot_history(outdir: str, hist) -> None:
    fig = Figure(title="sup norm", xlabel="t", ylabel="sup u")
    mask = hist.sup > 0
    if mask.any() and hist.sup[mask].max() / hist.sup[mask].min() > 100.0:
        fig.ylog = True
        fig.add_line(hist.t[mask], hist.sup[mask])
    else:
        fig.add_line(hist.t, hist.sup)
    _write_text(os.path.join(outdir, "plot.svg"), fig.to_svg())


def _plot_sweep(outdir: str, outcome) -> None:
    fig = Figure(title="blow-up time sweep", xlabel="lambda", ylabel="T_hat",
                 xlog=True, ylog=True)
    lams = [row.lam for row in outcome.rows if row.status == BLOWN_UP]
    times = [row.T_hat for row in outcome.rows if row.status == BLOWN_UP]
    fig.add_points(lams, times, label="measured")
    fit = outcome.fit
    if lams:
        # the fitted line lives in regressor coordinates; map it back
        gs = [lam * abs(math.log(lam)) if fit.log_correction_applied else lam
              for lam in lams]
        ts = [10.0 ** (fit.intercept + fit.slope * math.log10(g)) for g in gs]
        order = np.argsort(lams)
        fig.add_line([lams[i] for i in order], [ts[i] for i in order],
                     label=f"slope {fit.slope:.3f}", dashed=True)
    _write_text(os.path.join(outdir, "plot.svg"), fig.to_svg())


# ---------------------------------------------------------------------------
# subcommands


def _cmd_solve(cfg: dict, outdir: str, jobs: int, plot: bool, t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"p", "u0", "horizon", "cfl", "u_max",
                                     "flux", "norms", "snapshot_dt"}, "")
    grid = _parse_grid(cfg)
    scfg = _solver_config(cfg)
    u0 = _parse_u0(cfg.get("u0"), "u0") if "u0" in cfg else None
    if u0 is None:
        raise ConfigError("u0: required key missing")
    horizon = _get(cfg, "horizon", "", float)
    phi = sample_initial(u0, grid)
    hist, report = run(phi, scfg, horizon)
    _write_history(outdir, hist)
    snap_meta = []
    if "snapshot_dt" in cfg:
        traj = run_with_snapshots(phi, scfg, horizon,
                                  _get(cfg, "snapshot_dt", "", float))
        snap_meta = _write_snapshots(outdir, traj)
    if plot:
        _plot_history(outdir, hist)
    results = {
        "status": report.status,
        "T_hat": report.T_hat,
        "T_err": report.T_err,
        "final_sup": float(hist.sup[-1]),
        "snapshots": snap_meta,
    }
    echo = _echo_config(cfg, {"flux": scfg.flux, "norms": [],
                              "cfl": scfg.cfl_for(grid.ndim)})
    _write_report(outdir, "solve", echo, results, t0)
    return 0


def _cmd_blowup_time(cfg: dict, outdir: str, jobs: int, plot: bool,
                     t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"p", "u0", "horizon", "cfl", "u_max"}, "")
    grid = _parse_grid(cfg)
    scfg = _solver_config(cfg)
    u0 = _parse_u0(cfg.get("u0"), "u0") if "u0" in cfg else None
    if u0 is None:
        raise ConfigError("u0: required key missing")
    horizon = _get(cfg, "horizon", "", float)
    hist, report = run(sample_initial(u0, grid), scfg, horizon)
    _write_history(outdir, hist)
    if plot:
        _plot_history(outdir, hist)
    if report.status != BLOWN_UP:
        raise NumericalFailure(
            f"no blow-up before t={horizon:g}; cannot estimate a blow-up time")
    results = {
        "status": report.status,
        "T_hat": report.T_hat,
        "T_err": report.T_err,
        "T_bracket": list(report.T_bracket),
        "fit_r2": report.fit_r2,
        "grid_h": report.grid_h,
    }
    _write_report(outdir, "blowup-time", _echo_config(cfg, {}), results, t0)
    return 0


_SWEEP_KEYS = {"kind", "p", "N", "beta", "r", "lambda_grid", "grid_h",
               "truncation", "expected_exponent", "delta", "psi_scale",
               "allow_narrow_span", "slope_tol"}


def _cmd_sweep(cfg: dict, outdir: str, jobs: int, plot: bool, t0: float) -> int:
    _check_keys(cfg, _SWEEP_KEYS, "")
    raw_grid = cfg.get("lambda_grid")
    if not isinstance(raw_grid, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for v in raw_grid):
        raise ConfigError("lambda_grid: expected a list of numbers")
    kwargs = {
        "kind": _get(cfg, "kind", "", str),
        "p": _get(cfg, "p", "", float),
        "lambda_grid": tuple(float(v) for v in raw_grid),
    }
    if "N" in cfg:
        kwargs["N"] = _get(cfg, "N", "", int)
    if "beta" in cfg:
        kwargs["beta"] = _get(cfg, "beta", "", float)
    if "r" in cfg:
        kwargs["r"] = _get_extended(cfg, "r", "")
    if "grid_h" in cfg:
        kwargs["grid_h"] = _get(cfg, "grid_h", "", float)
    if "truncation" in cfg:
        kwargs["truncation"] = _get(cfg, "truncation", "", float)
    if "expected_exponent" in cfg:
        kwargs["expected_exponent"] = _get(cfg, "expected_exponent", "", float)
    if "delta" in cfg:
        kwargs["delta"] = _get(cfg, "delta", "", float)
    if "psi_scale" in cfg:
        kwargs["psi_scale"] = _get(cfg, "psi_scale", "", float)
    if "allow_narrow_span" in cfg:
        kwargs["allow_narrow_span"] = _get(cfg, "allow_narrow_span", "", bool)
    try:
        spec = ExperimentSpec(**kwargs)
    except ValueError as e:
        if str(e).startswith("theorem hypothesis violated"):
            raise
        raise ConfigError(str(e)) from e
    outcome = run_sweep(spec, jobs=jobs)

    lines = ["lambda,T_hat,T_err,h,status"]
    for row in outcome.rows:
        lines.append(",".join([_fmt(row.lam), _fmt(row.T_hat), _fmt(row.T_err),
                               _fmt(row.h), row.status]))
    _write_text(os.path.join(outdir, "sweep.csv"), "\n".join(lines) + "\n")

    fit = outcome.fit
    expected = outcome.expected_exponent
    tol = _get(cfg, "slope_tol", "", float, required=False,
               default=0.15 * abs(expected))
    summary = {
        "slope": fit.slope,
        "stderr": fit.stderr,
        "expected_exponent": expected,
        "pass": bool(abs(fit.slope - expected) <= tol),
    }
    _write_text(os.path.join(outdir, "summary.json"),
                json.dumps(summary, indent=2, sort_keys=True) + "\n")
    if plot:
        _plot_sweep(outdir, outcome)
    results = dict(summary)
    results.update({
        "log_correction_applied": fit.log_correction_applied,
        "widened": outcome.widened,
        "points": len(fit.points),
    })
    echo = _echo_config(cfg, {
        "N": spec.N, "beta": spec.beta, "grid_h": spec.grid_h,
        "truncation": spec.truncation, "delta": spec.delta,
        "psi_scale": spec.psi_scale, "expected_exponent": expected,
    })
    _write_report(outdir, "sweep", echo, results, t0)
    return 0


def _cmd_scaling_check(cfg: dict, outdir: str, jobs: int, plot: bool,
                       t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"p", "u0", "mu", "cfl"}, "")
    grid = _parse_grid(cfg)
    scfg = _solver_config(cfg)
    u0 = _parse_u0(cfg.get("u0"), "u0") if "u0" in cfg else None
    if u0 is None:
        raise ConfigError("u0: required key missing")
    mu = _get(cfg, "mu", "", float)
    try:
        ratio = scaling_check(sample_initial(u0, grid), mu, scfg)
    except ValueError as e:
        if "needs blow-up" in str(e):
            raise NumericalFailure(str(e)) from e
        raise
    _write_report(outdir, "scaling-check", _echo_config(cfg, {}),
                  {"ratio": ratio, "mu": mu}, t0)
    return 0


def _cmd_compare(cfg: dict, outdir: str, jobs: int, plot: bool,
                 t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"p", "u0_low", "u0_high", "horizon",
                                     "cfl"}, "")
    grid = _parse_grid(cfg)
    scfg = _solver_config(cfg)
    for key in ("u0_low", "u0_high"):
        if key not in cfg:
            raise ConfigError(f"{key}: required key missing")
    lo = sample_initial(_parse_u0(cfg["u0_low"], "u0_low"), grid)
    hi = sample_initial(_parse_u0(cfg["u0_high"], "u0_high"), grid)
    horizon = _get(cfg, "horizon", "", float)
    try:
        violation = comparison_test(lo, hi, scfg, horizon)
    except ValueError as e:
        raise ConfigError(f"u0_low: {e}") from e
    results = {
        "max_violation": violation,
        "sup_high": float(hi.values.max()),
        "ordered": bool(violation <= 1e-10 * max(hi.values.max(), 1e-300)),
    }
    _write_report(outdir, "compare", _echo_config(cfg, {}), results, t0)
    return 0


def _cmd_ulnorm(cfg: dict, outdir: str, jobs: int, plot: bool,
                t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"u0", "r", "rho"}, "")
    grid = _parse_grid(cfg)
    u0 = _parse_u0(cfg.get("u0"), "u0") if "u0" in cfg else None
    if u0 is None:
        raise ConfigError("u0: required key missing")
    r = _get_extended(cfg, "r", "")
    rho = _get_extended(cfg, "rho", "")
    try:
        value = uloc_norm(sample_initial(u0, grid), UlocParams(r=r, rho=rho))
    except ValueError as e:
        raise ConfigError(f"rho: {e}") from e
    _write_report(outdir, "ulnorm", _echo_config(cfg, {}),
                  {"value": value, "r": "inf" if r == math.inf else r,
                   "rho": "inf" if rho == math.inf else rho}, t0)
    return 0


def _cmd_rate_check(cfg: dict, outdir: str, jobs: int, plot: bool,
                    t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"p", "u0", "horizon", "r", "span",
                                     "cfl"}, "")
    grid = _parse_grid(cfg)
    r = _get_extended(cfg, "r", "")
    p = _get(cfg, "p", "", float)
    kwargs = {"norms": () if r == math.inf else ((r, math.inf),)}
    if "cfl" in cfg:
        kwargs["cfl"] = _get(cfg, "cfl", "", float)
    try:
        scfg = SolverConfig(p=p, **kwargs)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    u0 = _parse_u0(cfg.get("u0"), "u0") if "u0" in cfg else None
    if u0 is None:
        raise ConfigError("u0: required key missing")
    horizon = _get(cfg, "horizon", "", float)
    span = _get(cfg, "span", "", float, required=False, default=10.0)
    hist, report = run(sample_initial(u0, grid), scfg, horizon)
    _write_history(outdir, hist)
    if report.status != BLOWN_UP:
        raise NumericalFailure(
            f"no blow-up before t={horizon:g}; rate check needs one")
    N = grid.ndim
    lo_v, hi_v = rate_check(hist, report.T_hat, scfg.p, N, r, span=span)
    results = {
        "T_hat": report.T_hat,
        "window_min": lo_v,
        "window_max": hi_v,
        "bounded_ratio": bool(lo_v > 0.1 * hi_v),
    }
    _write_report(outdir, "rate-check", _echo_config(cfg, {"span": span}),
                  results, t0)
    return 0


def _cmd_decay_check(cfg: dict, outdir: str, jobs: int, plot: bool,
                     t0: float) -> int:
    _check_keys(cfg, _DOMAIN_KEYS | {"p", "u0", "horizon", "cfl"}, "")
    grid = _parse_grid(cfg)
    scfg = _solver_config(cfg)
    u0 = _parse_u0(cfg.get("u0"), "u0") if "u0" in cfg else None
    if u0 is None:
        raise ConfigError("u0: required key missing")
    horizon = _get(cfg, "horizon", "", float)
    hist, report = run(sample_initial(u0, grid), scfg, horizon)
    _write_history(outdir, hist)
    if plot:
        _plot_history(outdir, hist)
    try:
        decay_sup = decay_check(hist, scfg.p, report)
        slope = tail_slope(hist, scfg.p)
    except ValueError as e:
        raise NumericalFailure(str(e)) from e
    results = {
        "status": report.status,
        "decay_sup": decay_sup,
        "tail_slope": slope,
    }
    _write_report(outdir, "decay-check", _echo_config(cfg, {}), results, t0)
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "blowup-time": _cmd_blowup_time,
    "sweep": _cmd_sweep,
    "scaling-check": _cmd_scaling_check,
    "compare": _cmd_compare,
    "ulnorm": _cmd_ulnorm,
    "rate-check": _cmd_rate_check,
    "decay-check": _cmd_decay_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ulheat",
        description="Blow-up experiments for the heat equation with "
                    "nonlinear boundary flux.")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("config", help="path to a JSON config file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker bound for sweeps (ULHEAT_JOBS overrides)")
    parser.add_argument("--plot", action="store_true",
                        help="also write plot.svg")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    jobs = args.jobs
    if "ULHEAT_JOBS" in os.environ:
        try:
            jobs = int(os.environ["ULHEAT_JOBS"])
        except ValueError:
            print("ULHEAT_JOBS: expected an integer", file=sys.stderr)
            return _EXIT_SCHEMA
    if jobs < 1:
        print("--jobs: expected a positive integer", file=sys.stderr)
        return _EXIT_SCHEMA

    t0 = time.time()
    try:
        with open(args.config) as f:
            text = f.read()
    except OSError as e:
        print(f"cannot read config: {e}", file=sys.stderr)
        return _EXIT_IO
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as e:
        print(f"config is not valid JSON: {e}", file=sys.stderr)
        return _EXIT_SCHEMA
    if not isinstance(cfg, dict):
        print("config: expected a JSON object", file=sys.stderr)
        return _EXIT_SCHEMA

    try:
        os.makedirs(args.out, exist_ok=True)
        probe = os.path.join(args.out, ".write_probe")
        with open(probe, "w") as f:
            f.write("")
        os.remove(probe)
    except OSError as e:
        print(f"output directory not writable: {e}", file=sys.stderr)
        return _EXIT_IO

    try:
        code = _COMMANDS[args.command](cfg, args.out, jobs, args.plot, t0)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return _EXIT_SCHEMA
    except NumericalFailure as e:
        print(str(e), file=sys.stderr)
        return _EXIT_NUMERICAL
    except ValueError as e:
        msg = str(e)
        if msg.startswith("theorem hypothesis violated"):
            print(msg, file=sys.stderr)
            return _EXIT_HYPOTHESIS
        if msg.startswith("sweep underpowered"):
            print(msg, file=sys.stderr)
            return _EXIT_NUMERICAL
        print(msg, file=sys.stderr)
        return _EXIT_SCHEMA
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return _EXIT_IO

    if args.verbose:
        print(f"wrote artifacts to {args.out}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
