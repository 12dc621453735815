"""Log-corrected amplitude law at the borderline spatial decay rate.

For data lambda (1+|x|)^(-beta) with small lambda and p below the
critical exponent 1 + 1/N, the blow-up time grows like a power of
lambda when beta != N, but exactly at beta = N the correct regressor is
lambda |log lambda|.  The script fits the same sweep both ways: the
corrected fit lands near the predicted exponent with visibly lower
noise, while the plain fit is biased shallow.
"""

import numpy as np

from ulheat import ExperimentSpec, fit_decade_slope, run_sweep


def main():
    spec = ExperimentSpec(kind="lambda_sweep_small", p=1.5, beta=1.0,
                          lambda_grid=tuple(np.geomspace(0.0025,
                                                         0.0025 * 10 ** 1.5, 8)),
                          grid_h=0.15, truncation=60.0)
    print("u0 = lambda (1+x)^(-1) on the half line, p = 1.5 (below critical)")
    print("predicted: T ~ (lambda |log lambda|)^(-2)")
    print()
    outcome = run_sweep(spec)
    plain = fit_decade_slope(outcome.rows, spec.kind, log_correction=False)
    corrected = outcome.fit
    print(f"{'regressor':>24} {'slope':>10} {'stderr':>9}")
    print(f"{'log10 lambda':>24} {plain.slope:>10.4f} {plain.stderr:>9.4f}")
    print(f"{'log10 lambda|log lambda|':>24} {corrected.slope:>10.4f} "
          f"{corrected.stderr:>9.4f}")
    print()
    print(f"the corrected regressor moves the slope from {plain.slope:.3f} "
          f"toward the predicted -2 and cuts the fit noise by "
          f"{100 * (1 - corrected.stderr / plain.stderr):.0f}%")


if __name__ == "__main__":
    main()
