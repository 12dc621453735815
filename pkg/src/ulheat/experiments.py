"""Quantitative experiments on the boundary-flux blow-up model.

Each experiment measures one of the model's testable laws.  With initial
data lam*psi on the half-space and flux exponent p, the blow-up time
T(lam*psi) obeys power laws in lam whose decade slopes are computable:

    psi ~ |x|^(-beta) at the boundary, large lam:
        T ~ lam^(-2(p-1)/(1-beta(p-1)))        (0 <= beta < 1/(p-1))
    psi ~ (1+|x|)^(-beta) at infinity, small lam, p below 1+1/N:
        T ~ lam^(-2(p-1)/(1-beta(p-1)))        (beta < N)
        T ~ (lam|log lam|)^(-2(p-1)/(1-N(p-1)))  (beta = N)
        T ~ lam^(-2(p-1)/(1-N(p-1)))           (beta > N)
    and for p >= 1+1/N the first law also holds for small lam.

The other experiment kinds check structural facts rather than slopes:
rescaling data by mu^(1/(p-1)) psi(mu x) divides T by mu^2, ordered data
stay ordered, (T-t)^(1/(2(p-1)) - N/(2r)) ||u(t)||_r stays bounded away
from 0 and infinity approaching T, and global solutions keep
t^(1/(2(p-1))) sup u bounded.

Sweeps are planned around one pilot run at the largest amplitude: its
measured blow-up time anchors per-point time estimates through the
expected slope, and each estimate sets the point's grid spacing
(h proportional to sqrt(T), one spacing per decade of T, so the relative
discretization error of T_hat is roughly uniform across the sweep) and
its domain truncation (L proportional to sqrt(T), so the truncation
error is uniform too).  Uniform relative bias cancels in the fitted
slope.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import linregress

from .domains import (
    Domain,
    InitialData,
    SampledField,
    bounded_power,
    build_grid,
    constant,
    gaussian,
    half_line,
    half_plane,
    power_decay,
    sample_initial,
)
from .solver import (
    BLOWN_UP,
    GLOBAL_BY_HORIZON,
    BlowupReport,
    SolverConfig,
    SupNormHistory,
    ThresholdCrossing,
    run,
    stable_dt,
    step,
)
from .uloc import UlocParams, uloc_norm

SWEEP_KINDS = ("lambda_sweep_large", "lambda_sweep_small")
EXPERIMENT_KINDS = SWEEP_KINDS + (
    "scaling_check", "comparison", "rate_check", "decay_check")

# Grid spacing for sweep points grows with sqrt(expected T) but never past
# this cap: the initial data vary on scale min(1, delta) and a coarser grid
# would fold data-resolution error into the fitted slope.
_H_CAP = 0.35
# Asymptotic statements carry no onset, so fits use only the top (large-lam)
# or bottom (small-lam) part of the grid.
_FIT_SPAN_DECADES = 1.5
_STDERR_FRACTION = 0.10
# Horizon retry ladder, in multiples of the expected blow-up time: a run
# that stays finite gets a second and third chance on a longer horizon and
# a correspondingly larger domain before the point is dropped.
_HORIZON_LADDER = (4.0, 16.0, 64.0)
_EPS = float(np.finfo(np.float64).eps)

_GAMMA_CACHE: dict[tuple, float] = {}
_DECAY_CACHE: dict[tuple, tuple[float, float]] = {}


def p_star(N: int) -> float:
    """Critical flux exponent 1 + 1/N.

    Below it every positive solution blows up; above it small data in the
    critical norm L^{N(p-1)} exist globally and decay.
    """
    return 1.0 + 1.0 / N


def admissible_r(p: float, N: int, r: float) -> bool:
    """Whether local existence is controlled by data small in the r-norm.

    r >= N(p-1) above the critical exponent, r > 1 at it, r >= 1 below;
    r = inf is admissible everywhere.
    """
    if not p > 1.0:
        raise ValueError("p must exceed 1")
    ps = p_star(N)
    if p > ps:
        return r >= N * (p - 1.0)
    if p == ps:
        return r > 1.0
    return r >= 1.0


def smallness_gate(phi: SampledField, r: float, rho: float, gamma: float,
                   p: float, N: int) -> tuple[float, bool]:
    """Scale-invariant size rho^(1/(p-1) - N/r) ||phi||_{r,rho} vs gamma.

    Data passing the gate are guaranteed a solution up to a fixed multiple
    of rho^2; see calibrate_gamma for the threshold that backs the claim.
    """
    if N != phi.grid.ndim:
        raise ValueError(f"N={N} does not match the field dimension {phi.grid.ndim}")
    if not admissible_r(p, N, r):
        raise ValueError(f"r={r} is not admissible for p={p}, N={N}")
    if not (0.0 < rho < math.inf):
        raise ValueError("rho must be positive and finite")
    exponent = 1.0 / (p - 1.0) - (0.0 if math.isinf(r) else N / r)
    lhs = rho ** exponent * uloc_norm(phi, UlocParams(r, rho))
    return lhs, bool(lhs <= gamma)


def predicted_exponent(p: float, N: int, beta: float, regime: str,
                       r: float | None = None) -> tuple[float, bool]:
    """Decade slope of log T(lam psi) against log lam in the given regime.

    regime picks the asymptotic law: "large_lambda_r" (data small in an
    admissible r-norm), "large_lambda_beta" (data |x|^{-beta} at the
    boundary), or "small_lambda" (data (1+|x|)^{-beta} at infinity).
    Returns (slope, log_flag); the flag marks the lam|log lam| correction,
    raised exactly at beta = N below the critical exponent for small lam.
    """
    if not p > 1.0:
        raise ValueError("p must exceed 1")
    if regime == "large_lambda_r":
        if r is None:
            raise ValueError("regime large_lambda_r needs r")
        if not admissible_r(p, N, r) or (math.isfinite(r) and r <= N * (p - 1.0)):
            raise ValueError(
                f"theorem hypothesis violated: need admissible r > N(p-1), got r={r}")
        if math.isinf(r):
            return -2.0 * (p - 1.0), False
        return -2.0 * r * (p - 1.0) / (r - N * (p - 1.0)), False
    if beta < 0:
        raise ValueError("theorem hypothesis violated: beta must be nonnegative")
    if regime == "large_lambda_beta":
        if beta * (p - 1.0) >= 1.0:
            raise ValueError(
                f"theorem hypothesis violated: need beta < 1/(p-1) = {1.0 / (p - 1.0)}")
        return -2.0 * (p - 1.0) / (1.0 - beta * (p - 1.0)), False
    if regime == "small_lambda":
        if p >= p_star(N):
            if beta * (p - 1.0) >= 1.0:
                raise ValueError(
                    f"theorem hypothesis violated: need beta < 1/(p-1) = {1.0 / (p - 1.0)}")
            return -2.0 * (p - 1.0) / (1.0 - beta * (p - 1.0)), False
        if beta < N:
            return -2.0 * (p - 1.0) / (1.0 - beta * (p - 1.0)), False
        return -2.0 * (p - 1.0) / (1.0 - N * (p - 1.0)), beta == N
    raise ValueError(f"unknown regime {regime!r}")


@dataclass(frozen=True)
class ExperimentSpec:
    """One declarative experiment: what to run and what theory predicts.

    kind selects the experiment; p, N, beta, r the model parameters.
    Sweep kinds sample the amplitudes lambda_grid with profile psi
    determined by kind and beta: constant 1 for beta = 0, |x|^{-beta} cut
    at delta for large-amplitude sweeps, (1+|x|)^{-beta} for
    small-amplitude sweeps, all scaled by psi_scale.  grid_h and
    truncation describe the pilot grid; later points rescale both with
    the expected blow-up time.  expected_exponent overrides the predicted
    slope (used when checking a sweep against a hand-picked law).
    allow_narrow_span admits lambda grids under 1.5 decades, needed when
    a steep slope makes the full span computationally absurd.
    """

    kind: str
    p: float
    N: int = 1
    beta: float = 0.0
    r: float | None = None
    lambda_grid: tuple[float, ...] = ()
    grid_h: float = 0.01
    truncation: float = 3.0
    expected_exponent: float | None = None
    delta: float = 1.0
    psi_scale: float = 1.0
    allow_narrow_span: bool = False

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if not self.p > 1.0:
            raise ValueError("p must exceed 1")
        if self.N not in (1, 2):
            raise ValueError("N must be 1 or 2")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if not (self.grid_h > 0.0 and self.truncation > 0.0):
            raise ValueError("grid_h and truncation must be positive")
        if self.delta <= 0.0:
            raise ValueError("delta must be positive")
        if self.psi_scale <= 0.0:
            raise ValueError("psi_scale must be positive")
        if self.r is not None and not admissible_r(self.p, self.N, self.r):
            raise ValueError(
                f"r={self.r} is not admissible for p={self.p}, N={self.N}")
        if self.kind in SWEEP_KINDS:
            grid = tuple(float(lam) for lam in self.lambda_grid)
            object.__setattr__(self, "lambda_grid", grid)
            if len(grid) < 5:
                raise ValueError("lambda_grid needs at least 5 points")
            if grid[0] <= 0.0 or any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError("lambda_grid must be positive and strictly increasing")
            span = math.log10(grid[-1] / grid[0])
            if span < 1.5 - 1e-9 and not self.allow_narrow_span:
                raise ValueError("lambda_grid must span at least 1.5 decades")
            if self.kind == "lambda_sweep_large" and 0.0 < self.beta and self.beta >= self.N:
                raise ValueError(
                    "boundary-singular data need beta < N to be locally integrable")


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares decade slope of log10 T_hat against log10 lam.

    points holds every usable (log10 lam, log10 T_hat) pair of the sweep;
    slope, intercept and stderr come from the asymptotic span only.
    log_correction_applied marks that the regressor was
    log10(lam |log lam|) instead of log10(lam).
    """

    slope: float
    intercept: float
    stderr: float
    points: tuple[tuple[float, float], ...]
    log_correction_applied: bool


@dataclass(frozen=True)
class SweepRow:
    """One amplitude of a sweep: measured blow-up time or drop reason."""

    lam: float
    T_hat: float | None
    T_err: float | None
    h: float
    status: str


@dataclass(frozen=True)
class SweepOutcome:
    """Full sweep record: per-point rows, the fit, and the predicted slope."""

    spec: ExperimentSpec
    rows: tuple[SweepRow, ...]
    fit: ExponentFit
    expected_exponent: float
    widened: bool


def _expected(spec: ExperimentSpec) -> tuple[float, bool]:
    flag = (spec.kind == "lambda_sweep_small"
            and spec.p < p_star(spec.N) and spec.beta == spec.N)
    if spec.expected_exponent is not None:
        return float(spec.expected_exponent), flag
    regime = ("large_lambda_beta" if spec.kind == "lambda_sweep_large"
              else "small_lambda")
    return predicted_exponent(spec.p, spec.N, spec.beta, regime, spec.r)


def _sweep_profile(spec: ExperimentSpec) -> InitialData:
    if spec.beta == 0.0:
        return constant(spec.psi_scale)
    if spec.kind == "lambda_sweep_small":
        return bounded_power(spec.psi_scale, spec.beta)
    return power_decay(spec.psi_scale, spec.beta, spec.delta)


def _domain_of(N: int, L: float) -> Domain:
    return half_line(L) if N == 1 else half_plane(L, L)


def _spacing_cap(spec: ExperimentSpec) -> float:
    if spec.kind == "lambda_sweep_large" and spec.beta > 0.0:
        return min(_H_CAP, spec.delta / 4.0)
    return _H_CAP


def _spacing_for(spec: ExperimentSpec, T_est: float, T_anchor: float) -> float:
    decades = math.floor(math.log10(T_est)) - math.floor(math.log10(T_anchor))
    return min(spec.grid_h * 10.0 ** (decades / 2.0), _spacing_cap(spec))


def _run_point(spec: ExperimentSpec, lam: float, h: float, T_est: float) -> SweepRow:
    """One sweep amplitude through the horizon retry ladder."""
    singular = spec.kind == "lambda_sweep_large" and spec.beta > 0.0
    data = _sweep_profile(spec).scaled(lam)
    for i, factor in enumerate(_HORIZON_LADDER):
        horizon = factor * T_est
        # the first rung trusts T_est and sizes the domain for ~2 T_est;
        # later rungs mean the estimate was low, so size for the horizon
        reach = 6.0 * math.sqrt(2.0 * T_est if i == 0 else horizon)
        L = max(spec.truncation, reach + (spec.delta if singular else 0.0))
        cells = max(math.ceil(L / h), 32)
        grid = build_grid(_domain_of(spec.N, cells * h), h)
        u0 = sample_initial(data, grid)
        _, report = run(u0, SolverConfig(p=spec.p), horizon)
        if report.status == BLOWN_UP:
            return SweepRow(lam, report.T_hat, report.T_err, h, BLOWN_UP)
    return SweepRow(lam, None, None, h, GLOBAL_BY_HORIZON)


def _plan_and_run(spec: ExperimentSpec, lams: list[float], expected: float,
                  log_flag: bool, jobs: int,
                  anchor: tuple[float, float] | None = None,
                  ) -> tuple[dict[float, SweepRow], tuple[float, float] | None]:
    """Run every amplitude, anchoring time estimates on one pilot run.

    The pilot is the largest amplitude (the fastest run); its measured
    blow-up time is extrapolated to the others through the expected
    slope.  A caller that already has an anchor (grid widening) skips
    the pilot.
    """
    rows: dict[float, SweepRow] = {}
    pending = sorted(lams, reverse=True)
    if anchor is None:
        pilot_T = (spec.truncation / 6.0) ** 2 / _HORIZON_LADDER[0]
        while pending:
            lam = pending.pop(0)
            row = _run_point(spec, lam, spec.grid_h, pilot_T)
            rows[lam] = row
            if row.status == BLOWN_UP:
                anchor = (lam, row.T_hat)
                break
        if anchor is None:
            return rows, None

    lam_a, T_a = anchor

    def regressor(lam: float) -> float:
        if log_flag:
            g = lam * abs(math.log(lam))
            return g if g > 0.0 else lam
        return lam

    def one(lam: float) -> tuple[float, SweepRow]:
        T_est = T_a * (regressor(lam) / regressor(lam_a)) ** expected
        h = _spacing_for(spec, T_est, T_a)
        return lam, _run_point(spec, lam, h, T_est)

    todo = sorted(pending)
    if jobs > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for lam, row in pool.map(one, todo):
                rows[lam] = row
    else:
        for lam in todo:
            rows[lam] = one(lam)[1]
    return rows, anchor


def fit_decade_slope(rows, kind: str, log_correction: bool,
                     span_decades: float = _FIT_SPAN_DECADES) -> ExponentFit:
    """Fit log10 T_hat against log10 lam on the asymptotic span.

    kind picks the end the theory speaks about: the top span_decades
    decades of lam for lambda_sweep_large, the bottom for
    lambda_sweep_small.  If the span holds fewer than 4 usable points the
    4 nearest the asymptotic end are used instead.
    """
    if kind not in SWEEP_KINDS:
        raise ValueError(f"fit_decade_slope needs a sweep kind, got {kind!r}")
    usable = sorted((row.lam, row.T_hat) for row in rows if row.status == BLOWN_UP)
    if log_correction:
        # the correction factor lam|log lam| vanishes at lam = 1; such a
        # point carries no regression information
        usable = [(lam, T) for lam, T in usable if not math.isclose(lam, 1.0)]
    if len(usable) < 4:
        raise ValueError("sweep underpowered: fewer than 4 usable points")
    lams = np.array([lam for lam, _ in usable])
    T_hats = np.array([T for _, T in usable])
    if kind == "lambda_sweep_large":
        keep = lams >= lams[-1] / 10.0 ** span_decades
        fallback = slice(-4, None)
    else:
        keep = lams <= lams[0] * 10.0 ** span_decades
        fallback = slice(None, 4)
    if keep.sum() < 4:
        keep = np.zeros(len(lams), dtype=bool)
        keep[fallback] = True
    x = np.log10(lams[keep] * np.abs(np.log(lams[keep])) if log_correction
                 else lams[keep])
    result = linregress(x, np.log10(T_hats[keep]))
    points = tuple(zip(np.log10(lams).tolist(), np.log10(T_hats).tolist()))
    return ExponentFit(float(result.slope), float(result.intercept),
                       float(result.stderr), points, log_correction)


def _extension_amplitudes(spec: ExperimentSpec) -> list[float]:
    grid = spec.lambda_grid
    if spec.kind == "lambda_sweep_large":
        step_ratio = grid[-1] / grid[-2]
        return [grid[-1] * step_ratio, grid[-1] * step_ratio ** 2]
    step_ratio = grid[1] / grid[0]
    return [grid[0] / step_ratio, grid[0] / step_ratio ** 2]


def run_sweep(spec: ExperimentSpec, jobs: int = 1) -> SweepOutcome:
    """Measure T_hat across lambda_grid and fit the decade slope.

    If the fit's stderr reaches 10% of |slope| the grid is widened once
    by two extra amplitudes past the asymptotic end and refitted.
    """
    if spec.kind not in SWEEP_KINDS:
        raise ValueError(f"run_sweep needs a sweep kind, got {spec.kind!r}")
    expected, log_flag = _expected(spec)
    rows, anchor = _plan_and_run(spec, list(spec.lambda_grid), expected,
                                 log_flag, jobs)
    fit = fit_decade_slope(rows.values(), spec.kind, log_flag)
    widened = False
    if fit.stderr >= _STDERR_FRACTION * abs(fit.slope):
        extra, _ = _plan_and_run(spec, _extension_amplitudes(spec), expected,
                                 log_flag, jobs, anchor=anchor)
        rows.update(extra)
        fit = fit_decade_slope(rows.values(), spec.kind, log_flag)
        widened = True
    ordered = tuple(rows[lam] for lam in sorted(rows))
    return SweepOutcome(spec, ordered, fit, expected, widened)


def lambda_sweep(spec: ExperimentSpec, jobs: int = 1) -> ExponentFit:
    """Sweep amplitudes and return the fitted decade slope."""
    return run_sweep(spec, jobs=jobs).fit


def scaling_check(phi: SampledField, mu: float, cfg: SolverConfig) -> float:
    """mu^2 T_mu / T for rescaled data mu^(1/(p-1)) phi(mu x) on grid h/mu.

    The discrete evolution commutes with the rescaling exactly (the CFL
    number and the flux closure are preserved), so the ratio deviates
    from 1 only through the blow-up-time estimator; the continuum value
    is exactly 1.
    """
    if mu <= 0.0:
        raise ValueError("mu must be positive")
    base = phi.grid
    horizon = (base.domain.Lx / 6.0) ** 2
    for _ in range(3):
        _, report = run(phi, cfg, horizon)
        if report.status == BLOWN_UP:
            break
        horizon *= 4.0
    if report.status != BLOWN_UP:
        raise ValueError("scaling check needs blow-up; the base run stayed global")

    scaled_domain = replace(
        base.domain, Lx=base.domain.Lx / mu,
        Ly=None if base.domain.Ly is None else base.domain.Ly / mu)
    scaled_grid = build_grid(scaled_domain, base.h / mu)
    amplitude = mu ** (1.0 / (cfg.p - 1.0))
    # node j of the scaled grid sits at x_j / mu, where phi(mu * x_j / mu)
    # is exactly the stored node value: a plain copy keeps the rescaling
    # exact in floating point
    scaled = SampledField(scaled_grid, amplitude * phi.values)
    _, scaled_report = run(scaled, cfg, horizon / mu ** 2)
    if scaled_report.status != BLOWN_UP:
        raise ValueError("scaling check needs blow-up; the scaled run stayed global")
    return mu ** 2 * scaled_report.T_hat / report.T_hat


def comparison_test(phi1: SampledField, phi2: SampledField, cfg: SolverConfig,
                    horizon: float) -> float:
    """Largest nodewise excess u1 - u2 along a lockstep evolution.

    Both runs advance with the shared stable step of the pair, so the
    monotone update keeps ordered data ordered up to rounding; the
    returned maximum is over every step and node (negative when the
    ordering is strict throughout).
    """
    if (phi1.grid.domain != phi2.grid.domain or phi1.grid.shape != phi2.grid.shape
            or phi1.grid.h != phi2.grid.h):
        raise ValueError("phi1 and phi2 must live on the same grid")
    if np.any(phi1.values > phi2.values):
        raise ValueError("phi1 must lie below phi2 nodewise")
    u1, u2 = phi1, phi2
    t = 0.0
    violation = float(np.max(u1.values - u2.values))
    while t < horizon:
        if u1.sup() >= cfg.u_max or u2.sup() >= cfg.u_max:
            break
        dt = min(stable_dt(u1, cfg), stable_dt(u2, cfg), horizon - t)
        if dt <= 16.0 * _EPS * t:
            break
        try:
            u1 = step(u1, cfg, dt)
            u2 = step(u2, cfg, dt)
        except ThresholdCrossing:
            break
        t += dt
        violation = max(violation, float(np.max(u1.values - u2.values)))
    return violation


def rate_check(hist: SupNormHistory, T_hat: float, p: float, N: int, r: float,
               span: float = 10.0) -> tuple[float, float]:
    """Extremes of (T-t)^(1/(2(p-1)) - N/(2r)) ||u(t)||_r approaching T.

    The window is the final factor-span of T_hat - t among resolved
    samples: [m, span*m] with m the closest resolved approach.  Coverage
    demands a full decade below T_hat/10 regardless of span.  r = inf
    uses the sup-norm; finite r needs the global r-norm recorded in hist.
    """
    if not p > 1.0:
        raise ValueError("p must exceed 1")
    if not admissible_r(p, N, r):
        raise ValueError(f"r={r} is not admissible for p={p}, N={N}")
    if span <= 1.0:
        raise ValueError("span must exceed 1")
    series = hist.sup if math.isinf(r) else hist.norm_series(r, math.inf)
    mask = np.ones(len(hist), dtype=bool) if hist.resolved is None else hist.resolved.copy()
    s = T_hat - hist.t
    mask &= s > 0.0
    if not mask.any():
        raise ValueError("insufficient coverage: no resolved samples before T_hat")
    closest = s[mask].min()
    if 10.0 * closest > T_hat / 10.0:
        raise ValueError(
            "insufficient coverage: resolved samples stop a decade short of T_hat")
    window = mask & (s <= span * closest)
    exponent = 1.0 / (2.0 * (p - 1.0)) - (0.0 if math.isinf(r) else N / (2.0 * r))
    values = s[window] ** exponent * series[window]
    return float(values.min()), float(values.max())


def decay_check(hist: SupNormHistory, p: float,
                report: BlowupReport | None = None) -> float:
    """sup over t >= 1 of t^(1/(2(p-1))) sup u(t) for a global run."""
    if not p > 1.0:
        raise ValueError("p must exceed 1")
    if report is not None and report.status == BLOWN_UP:
        raise ValueError("decay check applies to global runs; this one blew up")
    late = hist.t >= 1.0
    if not late.any():
        raise ValueError("insufficient coverage: no samples at t >= 1")
    exponent = 1.0 / (2.0 * (p - 1.0))
    return float(np.max(hist.t[late] ** exponent * hist.sup[late]))


def tail_slope(hist: SupNormHistory, p: float, decades: float = 1.0) -> float:
    """Log-log slope of t^(1/(2(p-1))) sup u over the trailing decades.

    Zero means the decay saturates the borderline rate; pure heat decay of
    integrable data gives 1/(2(p-1)) - 1/2.
    """
    exponent = 1.0 / (2.0 * (p - 1.0))
    keep = (hist.t >= hist.t[-1] / 10.0 ** decades) & (hist.sup > 0.0)
    if keep.sum() < 4:
        raise ValueError("insufficient coverage for a tail slope")
    x = np.log10(hist.t[keep])
    y = np.log10(hist.t[keep] ** exponent * hist.sup[keep])
    return float(linregress(x, y).slope)


def calibrate_gamma(p: float, N: int, r: float, rho: float = 1.0,
                    mu: float = 0.1, grid_h: float | None = None,
                    safety: float = 0.95) -> float:
    """Largest gate threshold under which gated data survive to mu rho^2.

    Calibrates over a family of shapes, not constants alone: boundary
    plateaus of width w at equal gate value die much earlier than
    constants once w^2 is comparable to the horizon (the gate norm only
    charges a plateau sqrt(w) while its lifetime shrinks like its
    squared amplitude), so a constants-only threshold overclaims.  Each
    family member's amplitude is bisected to its survival threshold
    (survival is monotone in amplitude by comparison); the returned
    gamma is the smallest member's gate value times the safety factor.
    The result is scale-invariant in rho up to discretization.  Cached
    per argument tuple.
    """
    key = (float(p), int(N), float(r), float(rho), float(mu), grid_h, safety)
    if key in _GAMMA_CACHE:
        return _GAMMA_CACHE[key]
    if not admissible_r(p, N, r):
        raise ValueError(f"r={r} is not admissible for p={p}, N={N}")
    if not (0.0 < rho < math.inf):
        raise ValueError("rho must be positive and finite")
    h = rho / 64.0 if grid_h is None else grid_h
    cells = max(math.ceil(4.0 * rho / h), 32)
    grid = build_grid(_domain_of(N, cells * h), h)
    horizon = mu * rho ** 2
    cfg = SolverConfig(p=p)
    family = [constant(1.0)]
    family += [power_decay(1.0, 0.0, w * rho)
               for w in (0.125, 0.25, 0.5, 1.0, 2.0)]
    family += [gaussian(1.0, w * rho) for w in (0.125, 0.25, 0.5, 1.0)]

    def survives(shape: InitialData, amplitude: float) -> bool:
        u0 = sample_initial(shape.scaled(amplitude), grid)
        _, report = run(u0, cfg, horizon)
        return report.status != BLOWN_UP

    gamma = math.inf
    for shape in family:
        lo, hi = 1.0, 2.0
        if survives(shape, lo):
            while survives(shape, hi) and hi < 2.0 ** 60:
                lo, hi = hi, hi * 2.0
        else:
            lo, hi = 0.5, 1.0
            while not survives(shape, lo) and lo > 2.0 ** -60:
                lo, hi = lo / 2.0, lo
        for _ in range(30):
            mid = math.sqrt(lo * hi)
            if survives(shape, mid):
                lo = mid
            else:
                hi = mid
        threshold = smallness_gate(sample_initial(shape.scaled(lo), grid),
                                   r, rho, math.inf, p, N)[0]
        gamma = min(gamma, threshold)
    gamma *= safety
    _GAMMA_CACHE[key] = gamma
    return gamma


def decay_threshold_amplitude(p: float, N: int = 1, width: float = 1.0,
                              horizon: float = 50.0, grid_h: float = 0.04,
                              rel_tol: float = 1e-3) -> tuple[float, float]:
    """Bracket the gaussian amplitude separating decay from blow-up.

    Returns (lo, hi) with the lo-amplitude run verified global up to the
    horizon and the hi run blowing up before it, hi/lo - 1 <= rel_tol.
    Only meaningful above the critical exponent, where the threshold is
    positive; below it the bisection collapses toward zero and errors.
    Cached per argument tuple.
    """
    key = (float(p), int(N), float(width), float(horizon), float(grid_h),
           float(rel_tol))
    if key in _DECAY_CACHE:
        return _DECAY_CACHE[key]
    if not p > 1.0:
        raise ValueError("p must exceed 1")
    L = 6.0 * math.sqrt(horizon) + 2.0 * width
    cells = max(math.ceil(L / grid_h), 32)
    grid = build_grid(_domain_of(N, cells * grid_h), grid_h)
    cfg = SolverConfig(p=p)

    def survives(amplitude: float) -> bool:
        u0 = sample_initial(gaussian(amplitude, width), grid)
        _, report = run(u0, cfg, horizon)
        return report.status != BLOWN_UP

    lo, hi = 0.5, 1.0
    while survives(hi):
        lo, hi = hi, hi * 2.0
        if hi > 2.0 ** 30:
            raise ValueError("no blow-up found: amplitude threshold out of range")
    while not survives(lo):
        lo, hi = lo / 2.0, lo
        if lo < 2.0 ** -30:
            raise ValueError(
                "no surviving amplitude found: threshold collapses to zero")
    while hi / lo - 1.0 > rel_tol:
        mid = math.sqrt(lo * hi)
        if survives(mid):
            lo = mid
        else:
            hi = mid
    _DECAY_CACHE[key] = (lo, hi)
    return lo, hi


def calibrate_decay_gamma(p: float, N: int = 1, width: float = 1.0,
                          horizon: float = 50.0, grid_h: float = 0.04) -> float:
    """Critical-norm threshold backing the global-decay claim.

    The L^{N(p-1)} norm of the largest gaussian of the given width that
    survives to the horizon; data of that shape below the threshold decay.
    """
    lo, _ = decay_threshold_amplitude(p, N, width, horizon, grid_h)
    L = 6.0 * math.sqrt(horizon) + 2.0 * width
    cells = max(math.ceil(L / grid_h), 32)
    grid = build_grid(_domain_of(N, cells * grid_h), grid_h)
    u0 = sample_initial(gaussian(lo, width), grid)
    return uloc_norm(u0, UlocParams(N * (p - 1.0), math.inf))
