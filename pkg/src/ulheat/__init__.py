"""Heat flow with nonlinear boundary flux: solver, uniformly local norms,
and blow-up scaling-law experiments."""

from .domains import (
    Domain,
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
    ExponentFit,
    SweepOutcome,
    SweepRow,
    admissible_r,
    calibrate_decay_gamma,
    calibrate_gamma,
    comparison_test,
    decay_check,
    decay_threshold_amplitude,
    fit_decade_slope,
    lambda_sweep,
    p_star,
    predicted_exponent,
    rate_check,
    run_sweep,
    scaling_check,
    smallness_gate,
    tail_slope,
)
from .solver import (
    BLOWN_UP,
    GLOBAL_BY_HORIZON,
    BlowupReport,
    BumpTestFunction,
    SolverConfig,
    SupNormHistory,
    ThresholdCrossing,
    Trajectory,
    discrete_mass,
    estimate_blowup_time,
    exact_linear_solution,
    run,
    run_with_snapshots,
    stable_dt,
    step,
    weak_residual,
)
from .uloc import (
    CoverSpec,
    UlocParams,
    covering_centers,
    covering_inequality_check,
    holder_embedding_bound,
    psi_history,
    uloc_norm,
    vanishing_small_rho,
)

__version__ = "0.1.0"

__all__ = [
    "BLOWN_UP",
    "GLOBAL_BY_HORIZON",
    "BlowupReport",
    "BumpTestFunction",
    "CoverSpec",
    "Domain",
    "ExperimentSpec",
    "ExponentFit",
    "Grid",
    "InitialData",
    "SampledField",
    "SolverConfig",
    "SupNormHistory",
    "SweepOutcome",
    "SweepRow",
    "ThresholdCrossing",
    "Trajectory",
    "UlocParams",
    "admissible_r",
    "bounded_power",
    "build_grid",
    "calibrate_decay_gamma",
    "calibrate_gamma",
    "comparison_test",
    "constant",
    "covering_centers",
    "covering_inequality_check",
    "custom",
    "decay_check",
    "decay_threshold_amplitude",
    "discrete_mass",
    "estimate_blowup_time",
    "exact_linear_solution",
    "fit_decade_slope",
    "gaussian",
    "half_line",
    "half_plane",
    "holder_embedding_bound",
    "interval",
    "lambda_sweep",
    "p_star",
    "power_decay",
    "predicted_exponent",
    "psi_history",
    "rate_check",
    "rectangle",
    "run",
    "run_sweep",
    "run_with_snapshots",
    "sample_initial",
    "scaling_check",
    "smallness_gate",
    "stable_dt",
    "step",
    "tail_slope",
    "uloc_norm",
    "vanishing_small_rho",
    "weak_residual",
]
