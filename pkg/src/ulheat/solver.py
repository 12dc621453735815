"""Explicit finite differences for heat flow driven through the boundary.

du/dt = Lap u inside a box domain, with the nonlinear flux condition
du/dnu = |u|^{p-1} u on physical faces (nu the outer normal, so the flux
pumps energy inward) and reflective closure on artificial truncation
faces.  The boundary condition enters through a centered ghost value

    u_ghost = u_inner + 2 h |u_b|^{p-1} u_b,

second order like the interior stencil.  With dt = cfl h^2 and
cfl <= 1/(2N) every update is monotone in all of its inputs, which gives
the discrete comparison principle and positivity preservation exactly.

Near blow-up the boundary term stiffens.  The run loop halves dt (locally
in time) whenever dt p U_b^{p-1} / h >= 1 at the boundary, keeping the
boundary update accurate and monotone all the way to the U_max threshold.

Past a sup-norm of order (cfl p h)^{-1/(p-1)} the blow-up layer is thinner
than the mesh, and the discrete solution leaves the self-similar rate for
a slower boundary-ODE tail before stalling at its own singular time.  The
history therefore flags samples taken while still resolved (base step
size, sup-norm safely below that scale); blow-up time extrapolation fits
only those, where V(t) = ||u(t)||_inf follows the self-similar rate and
W = V^{-2(p-1)} is asymptotically linear in t.  The flagging scale is
equivariant under the parabolic rescaling, so scaled runs fit scaled
windows exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import linregress

from .domains import PHYSICAL, Grid, SampledField
from .uloc import UlocParams, uloc_norm

BLOWN_UP = "blown_up"
GLOBAL_BY_HORIZON = "global_by_horizon"

_CFL_MAX = {1: 0.5, 2: 0.25}
_CFL_DEFAULT = {1: 0.4, 2: 0.2}

_EPS = float(np.finfo(np.float64).eps)

# A sample counts as resolved while W = V^{-2(p-1)} sits at least this
# factor above its value at the stiffness-onset scale (cfl p h)^{-1/(p-1)},
# keeping the fitted window clear of the under-resolved bend.
_RESOLUTION_MARGIN = 25.0


class ThresholdCrossing(RuntimeError):
    """A step produced non-finite values.

    Signals that the solution passed every finite threshold within one
    step; the run loop treats it as a blow-up threshold crossing, not a
    failure.
    """


@dataclass(frozen=True)
class SolverConfig:
    """Integration parameters.

    p is the flux exponent (> 1; p = 1 only for the linear oracle).  cfl
    defaults to 0.4 in 1D and 0.2 in 2D, safely inside the monotone range.
    norms lists (r, rho) pairs whose uniformly local norms are recorded
    alongside the sup-norm.  flux=False disables the boundary term
    entirely (pure reflective heat flow, used by conservation checks).
    """

    p: float
    cfl: float | None = None
    u_max: float = 1e8
    fit_window: int = 20
    sample_stride: int = 5
    flux: bool = True
    norms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise ValueError("p must be >= 1")
        if not (self.u_max > 0.0):
            raise ValueError("u_max must be positive")
        if self.fit_window < 4:
            raise ValueError("fit_window must be at least 4")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be at least 1")

    def cfl_for(self, ndim: int) -> float:
        cfl = _CFL_DEFAULT[ndim] if self.cfl is None else self.cfl
        if not (0.0 < cfl <= _CFL_MAX[ndim]):
            raise ValueError(f"cfl must lie in (0, {_CFL_MAX[ndim]}] for N={ndim}")
        return cfl


@dataclass(frozen=True)
class SupNormHistory:
    """Sampled sup-norm trace of a run, with optional uloc norms.

    resolved flags samples taken while the scheme still resolves the
    solution (base step size, sup-norm below the mesh resolution scale);
    the stiffness-halved tail is unflagged.  None means untracked, treated
    as all resolved.
    """

    t: np.ndarray
    sup: np.ndarray
    norms: dict[tuple[float, float], np.ndarray] = field(default_factory=dict)
    resolved: np.ndarray | None = None

    def __post_init__(self):
        t = np.asarray(self.t, dtype=np.float64)
        sup = np.asarray(self.sup, dtype=np.float64)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "sup", sup)
        if t.shape != sup.shape or t.ndim != 1:
            raise ValueError("t and sup must be 1d arrays of equal length")
        if len(t) and np.any(np.diff(t) <= 0.0):
            raise ValueError("sample times must be strictly increasing")
        if not np.all(np.isfinite(sup)):
            raise ValueError("recorded sup norms must be finite")

    def __len__(self) -> int:
        return len(self.t)

    def norm_series(self, r: float, rho: float) -> np.ndarray:
        """Recorded ||u(t)||_{r,rho} series for a configured pair."""
        key = (float(r), float(rho))
        if key in self.norms:
            return self.norms[key]
        for (kr, krho), series in self.norms.items():
            if math.isclose(kr, r) and math.isclose(krho, rho):
                return series
        raise KeyError(f"no norms recorded for (r, rho) = {key}")


@dataclass(frozen=True)
class BlowupReport:
    """Outcome of a run: blown_up or global_by_horizon.

    For blow-ups, T_bracket = (last resolved sample time, threshold
    crossing time) brackets the estimate; T_err is the spread of the fit's
    zero crossing over sub-windows.
    """

    status: str
    grid_h: float
    T_hat: float | None = None
    T_bracket: tuple[float, float] | None = None
    fit_r2: float | None = None
    T_err: float | None = None


def exact_linear_solution(x, t):
    """e^{t-x}: solves du/dt = u_xx with -u_x(0,t) = u(0,t) on the half-line."""
    return np.exp(np.asarray(t) - np.asarray(x))


def _flux_density(u, p: float):
    """|u|^{p-1} u, the boundary flux."""
    if p == 1.0:
        return u
    return np.abs(u) ** (p - 1.0) * u


def _ghost_padded(values: np.ndarray, grid: Grid, p: float, with_flux: bool) -> np.ndarray:
    """Pad with ghost slabs realizing the boundary closures.

    Physical faces get u_inner + 2h g(u_b), artificial faces the
    reflective u_inner.  Corner entries of the pad are never read by the
    cross stencil and stay zero.
    """
    nd = values.ndim
    h = grid.h
    pad = np.zeros(tuple(n + 2 for n in values.shape))
    core = (slice(1, -1),) * nd
    pad[core] = values

    def slab(axis, idx):
        sl = [slice(1, -1)] * nd
        sl[axis] = idx
        return tuple(sl)

    for axis in range(nd):
        lo_kind, hi_kind = grid.domain.face_kinds[axis]
        for ghost_i, bdry_i, inner_i, kind in ((0, 1, 2, lo_kind), (-1, -2, -3, hi_kind)):
            ghost = pad[slab(axis, inner_i)].copy()
            if kind == "physical" and with_flux:
                ghost += 2.0 * h * _flux_density(pad[slab(axis, bdry_i)], p)
            pad[slab(axis, ghost_i)] = ghost
    return pad


def _step_values(values: np.ndarray, grid: Grid, p: float, with_flux: bool, dt: float) -> np.ndarray:
    nd = values.ndim
    pad = _ghost_padded(values, grid, p, with_flux)
    lap = -2.0 * nd * values
    for axis in range(nd):
        lo = [slice(1, -1)] * nd
        hi = [slice(1, -1)] * nd
        lo[axis] = slice(0, -2)
        hi[axis] = slice(2, None)
        lap = lap + pad[tuple(lo)] + pad[tuple(hi)]
    return values + (dt / grid.h**2) * lap


def step(u: SampledField, cfg: SolverConfig, dt: float | None = None) -> SampledField:
    """One explicit Euler step; dt defaults to cfl h^2.

    Raises ThresholdCrossing if the update overflows the float range,
    which the run loop interprets as the threshold being passed.
    """
    grid = u.grid
    if dt is None:
        dt = cfg.cfl_for(grid.ndim) * grid.h**2
    new = _step_values(u.values, grid, cfg.p, cfg.flux, dt)
    if not np.all(np.isfinite(new)):
        raise ThresholdCrossing("update left the float range")
    return u.with_values(new)


def stable_dt(u: SampledField, cfg: SolverConfig, dt0: float | None = None) -> float:
    """Base dt, halved until the boundary term is non-stiff for this state.

    Keeps dt p U_b^{p-1} / h < 1 with U_b the largest |u| on physical
    boundary nodes.  Used by the run loop every step; exposed so paired
    runs can step in lockstep with a common dt.
    """
    grid = u.grid
    if dt0 is None:
        dt0 = cfg.cfl_for(grid.ndim) * grid.h**2
    if not cfg.flux or cfg.p <= 1.0:
        return dt0
    phys = grid.boundary_class == PHYSICAL
    if not phys.any():
        return dt0
    ub = float(np.max(np.abs(u.values[phys])))
    if ub == 0.0:
        return dt0
    stiffness = dt0 * cfg.p * ub ** (cfg.p - 1.0) / grid.h
    if stiffness < 1.0:
        return dt0
    n_half = min(64, int(math.floor(math.log2(stiffness))) + 1)
    return dt0 / 2.0**n_half


class _Recorder:
    def __init__(self, params: list[UlocParams]):
        self.params = params
        self.t: list[float] = []
        self.sup: list[float] = []
        self.resolved: list[bool] = []
        self.series: list[list[float]] = [[] for _ in params]

    def record(self, t: float, u: SampledField, resolved: bool):
        self.t.append(t)
        self.sup.append(u.sup())
        self.resolved.append(resolved)
        for vals, prm in zip(self.series, self.params):
            vals.append(uloc_norm(u, prm))

    def history(self) -> SupNormHistory:
        norms = {
            (prm.r, prm.rho): np.asarray(vals)
            for prm, vals in zip(self.params, self.series)
        }
        return SupNormHistory(
            t=np.asarray(self.t),
            sup=np.asarray(self.sup),
            norms=norms,
            resolved=np.asarray(self.resolved, dtype=bool),
        )


def _check_grid_resolution(grid: Grid):
    if min(grid.shape) < 16:
        raise ValueError("grid too coarse for time integration: need >= 16 nodes per axis")


def run(u0: SampledField, cfg: SolverConfig, t_horizon: float) -> tuple[SupNormHistory, BlowupReport]:
    """Integrate until the sup-norm reaches u_max or t reaches t_horizon.

    Returns the sampled history and a report.  History is recorded every
    sample_stride base steps, at every stiffness-halved step, and at the
    final step.  A tie between threshold and horizon counts as blow-up.
    """
    grid = u0.grid
    _check_grid_resolution(grid)
    cfl = cfg.cfl_for(grid.ndim)
    if not (t_horizon > 0.0):
        raise ValueError("t_horizon must be positive")
    dt0 = cfl * grid.h**2
    dt_cap = dt0 * (1.0 + 1e-12)
    params = [UlocParams(r, rho) for r, rho in cfg.norms]

    if cfg.flux and cfg.p > 1.0 and (grid.boundary_class == PHYSICAL).any():
        onset = (cfl * cfg.p * grid.h) ** (-1.0 / (cfg.p - 1.0))
        v_cut = onset * _RESOLUTION_MARGIN ** (-0.5 / (cfg.p - 1.0))
    else:
        v_cut = math.inf

    rec = _Recorder(params)
    u = u0
    t = 0.0
    t_last_resolved = 0.0
    n_steps = 0
    rec.record(0.0, u0, u0.sup() <= v_cut)

    if u0.sup() >= cfg.u_max:
        report = BlowupReport(
            status=BLOWN_UP, grid_h=grid.h, T_hat=0.0,
            T_bracket=(0.0, 0.0), fit_r2=0.0, T_err=0.0,
        )
        return rec.history(), report

    status = None
    t_cross = None
    while True:
        dt = stable_dt(u, cfg, dt0)
        if dt > dt_cap:
            raise RuntimeError(f"CFL violation mid-run: dt={dt} exceeds cfl*h^2={dt0}")
        halved = dt < dt0
        if dt <= 16.0 * _EPS * t:
            # Step size has collapsed below time resolution: the remaining
            # time to any threshold is below rounding, blow-up is complete.
            status, t_cross = BLOWN_UP, t
            break
        at_horizon = t + dt >= t_horizon
        if at_horizon:
            dt = t_horizon - t
        try:
            u = step(u, cfg, dt)
        except ThresholdCrossing:
            status, t_cross = BLOWN_UP, t + dt
            break
        t += dt
        n_steps += 1
        sup = u.sup()
        resolved = not halved and sup <= v_cut
        crossed = sup >= cfg.u_max
        if crossed or halved or at_horizon or n_steps % cfg.sample_stride == 0:
            rec.record(t, u, resolved)
            if resolved:
                t_last_resolved = t
        if crossed:
            status, t_cross = BLOWN_UP, t
            break
        if at_horizon:
            status = GLOBAL_BY_HORIZON
            break

    hist = rec.history()
    if status == GLOBAL_BY_HORIZON:
        return hist, BlowupReport(status=status, grid_h=grid.h)

    try:
        T_hat, fit_r2 = estimate_blowup_time(hist, cfg.p, cfg.fit_window)
        T_err = _crossing_spread(hist, cfg.p, cfg.fit_window)
    except (ValueError, ZeroDivisionError):
        # Degenerate history (too few resolved samples): fall back to the
        # observed crossing and flag the fit as unusable.
        T_hat, fit_r2, T_err = t_cross, 0.0, t_cross - t_last_resolved
    report = BlowupReport(
        status=BLOWN_UP,
        grid_h=grid.h,
        T_hat=T_hat,
        T_bracket=(t_last_resolved, t_cross),
        fit_r2=fit_r2,
        T_err=T_err,
    )
    return hist, report


def _fit_samples(hist: SupNormHistory, fit_window: int) -> tuple[np.ndarray, np.ndarray]:
    if hist.resolved is not None:
        sel = hist.resolved
        t, v = hist.t[sel], hist.sup[sel]
    else:
        t, v = hist.t, hist.sup
    if len(t) < fit_window:
        raise ValueError(f"need at least fit_window={fit_window} samples, have {len(t)}")
    return t[-fit_window:], v[-fit_window:]


def estimate_blowup_time(hist: SupNormHistory, p: float, fit_window: int = 20) -> tuple[float, float]:
    """Extrapolated blow-up time from the trailing sup-norm samples.

    The sup-norm rate makes W(t) = V(t)^{-2(p-1)} asymptotically linear;
    a least-squares line over the trailing fit_window samples (resolved
    samples when the history is flagged) crosses zero at T_hat.  The
    crossing always lies past the fitted window, so it falls inside the
    bracket a run reports.  Returns (T_hat, fit_r2).
    """
    if not (p > 1.0):
        raise ValueError("blow-up extrapolation needs p > 1")
    t, v = _fit_samples(hist, fit_window)
    if np.any(np.diff(v) <= 0.0) or v[0] <= 0.0:
        raise ValueError("no blow-up trend")
    w = v ** (-2.0 * (p - 1.0))
    fit = linregress(t, w)
    if not (fit.slope < 0.0):
        raise ValueError("no blow-up trend")
    T_hat = -fit.intercept / fit.slope
    return float(T_hat), float(fit.rvalue**2)


def _crossing_spread(hist: SupNormHistory, p: float, fit_window: int) -> float:
    """Spread of the zero crossing over sliding sub-windows of the fit window."""
    t, v = _fit_samples(hist, fit_window)
    w = v ** (-2.0 * (p - 1.0))
    width = max(5, fit_window // 2)
    crossings = []
    for start in range(len(t) - width + 1):
        fit = linregress(t[start : start + width], w[start : start + width])
        if fit.slope < 0.0:
            crossings.append(-fit.intercept / fit.slope)
    if len(crossings) < 2:
        return 0.0
    return float(max(crossings) - min(crossings))


def _trapezoid_weights(shape: tuple[int, ...]) -> np.ndarray:
    w = np.ones(shape)
    for axis in range(len(shape)):
        sl = [slice(None)] * len(shape)
        for edge in (0, -1):
            sl[axis] = edge
            w[tuple(sl)] *= 0.5
    return w


def discrete_mass(u: SampledField) -> float:
    """Trapezoidal quadrature of u over the truncated domain.

    With the boundary flux disabled the reflective scheme telescopes under
    exactly these weights, so this quantity is conserved to rounding.
    """
    w = _trapezoid_weights(u.values.shape)
    return float(np.sum(w * u.values)) * u.h ** u.grid.ndim


@dataclass(frozen=True)
class Trajectory:
    """Solution snapshots at a coarse time stride, for weak-form checks."""

    grid: Grid
    cfg: SolverConfig
    t: np.ndarray
    frames: np.ndarray  # (nt, *grid.shape)


def run_with_snapshots(
    u0: SampledField, cfg: SolverConfig, t_horizon: float, snapshot_dt: float
) -> Trajectory:
    """Integrate to t_horizon, storing frames every ~snapshot_dt.

    Meant for pre-blow-up windows; stops early at the u_max threshold.
    """
    grid = u0.grid
    _check_grid_resolution(grid)
    dt0 = cfg.cfl_for(grid.ndim) * grid.h**2
    if not (snapshot_dt > 0.0):
        raise ValueError("snapshot_dt must be positive")
    times = [0.0]
    frames = [u0.values]
    u = u0
    t = 0.0
    next_snap = snapshot_dt
    while t < t_horizon * (1.0 - 1e-14):
        dt = min(stable_dt(u, cfg, dt0), t_horizon - t)
        u = step(u, cfg, dt)
        t += dt
        if t >= next_snap * (1.0 - 1e-12) or t >= t_horizon * (1.0 - 1e-14):
            times.append(t)
            frames.append(u.values)
            next_snap += snapshot_dt
        if u.sup() >= cfg.u_max:
            break
    return Trajectory(grid=grid, cfg=cfg, t=np.asarray(times), frames=np.stack(frames))


def _bump(s: np.ndarray) -> np.ndarray:
    """C-infinity bump: exp(1 - 1/(1-s^2)) for |s| < 1, else 0, peak 1."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - si**2))
    return out


def _bump_deriv(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - si**2)) * (-2.0 * si) / (1.0 - si**2) ** 2
    return out


@dataclass(frozen=True)
class BumpTestFunction:
    """Smooth compactly supported space-time test function.

    Product of a radial bump of the given radius about center and a bump
    of half-width t_radius about t_center.  Analytic value, time
    derivative, and spatial gradient.
    """

    center: tuple[float, ...]
    radius: float
    t_center: float
    t_radius: float

    def _spatial(self, coords) -> tuple[np.ndarray, list[np.ndarray]]:
        r2 = np.zeros_like(coords[0])
        for c, x in zip(self.center, coords):
            r2 = r2 + (x - c) ** 2
        r = np.sqrt(r2)
        s = r / self.radius
        X = _bump(s)
        dB = _bump_deriv(s)
        grads = []
        with np.errstate(invalid="ignore", divide="ignore"):
            for c, x in zip(self.center, coords):
                g = dB * (x - c) / (self.radius * r)
                grads.append(np.where(r > 0.0, g, 0.0))
        return X, grads

    def value(self, coords, t: float) -> np.ndarray:
        X, _ = self._spatial(coords)
        return X * _bump((t - self.t_center) / self.t_radius)

    def time_derivative(self, coords, t: float) -> np.ndarray:
        X, _ = self._spatial(coords)
        return X * _bump_deriv((t - self.t_center) / self.t_radius) / self.t_radius

    def gradient(self, coords, t: float) -> list[np.ndarray]:
        _, grads = self._spatial(coords)
        theta = _bump((t - self.t_center) / self.t_radius)
        return [g * theta for g in grads]


def weak_residual(traj: Trajectory, test_fn: BumpTestFunction) -> float:
    """|LHS - RHS| of the weak form against a smooth test function.

    LHS integrates -u phi_t + grad u . grad phi over space-time, RHS the
    boundary flux |u|^{p-1} u phi over the physical faces; both by
    trapezoidal quadrature.  For an exact solution the two sides agree, so
    the residual measures the discretization error.
    """
    grid = traj.grid
    h = grid.h
    nd = grid.ndim
    lengths = grid.domain.lengths

    for axis in range(nd):
        lo_kind, hi_kind = grid.domain.face_kinds[axis]
        c = test_fn.center[axis]
        if lo_kind == "artificial" and c - test_fn.radius < 0.0:
            raise ValueError("test function support exits the truncated domain")
        if hi_kind == "artificial" and c + test_fn.radius > lengths[axis]:
            raise ValueError("test function support exits the truncated domain")
    if test_fn.t_center - test_fn.t_radius < traj.t[0] or test_fn.t_center + test_fn.t_radius > traj.t[-1]:
        raise ValueError("test function support exits the sampled time interval")

    coords = grid.coords()
    wspace = _trapezoid_weights(grid.shape) * h**nd

    def face_slices(axis, edge):
        sl = [slice(None)] * nd
        sl[axis] = 0 if edge == "lo" else -1
        return tuple(sl)

    lhs_t = np.empty(len(traj.t))
    rhs_t = np.empty(len(traj.t))
    for k, tk in enumerate(traj.t):
        u = traj.frames[k]
        phi_t = test_fn.time_derivative(coords, tk)
        grads_phi = test_fn.gradient(coords, tk)
        grads_u = np.gradient(u, h) if nd > 1 else [np.gradient(u, h)]
        integrand = -u * phi_t
        for gu, gp in zip(grads_u, grads_phi):
            integrand = integrand + gu * gp
        lhs_t[k] = np.sum(wspace * integrand)

        phi = test_fn.value(coords, tk)
        flux = _flux_density(u, traj.cfg.p)
        total = 0.0
        for axis in range(nd):
            for edge, kind in zip(("lo", "hi"), grid.domain.face_kinds[axis]):
                if kind != "physical":
                    continue
                sl = face_slices(axis, edge)
                fvals = flux[sl] * phi[sl]
                if nd == 1:
                    total += float(fvals)
                else:
                    total += float(np.trapezoid(fvals, dx=h))
        rhs_t[k] = total

    lhs = float(np.trapezoid(lhs_t, traj.t))
    rhs = float(np.trapezoid(rhs_t, traj.t))
    return abs(lhs - rhs)
