"""Estimate the boundary-driven blow-up time of constant initial data.

The heat equation on the half line absorbs energy through the boundary
flux u_x(0) = -|u|^(p-1) u(0).  Constant data of height 1 blow up in
finite time for every p > 1; the script reports the extrapolated
blow-up time, the bracket that contains it, and how the estimate
settles under grid refinement.
"""

import numpy as np

from ulheat import SolverConfig, build_grid, constant, half_line, run, sample_initial


def main():
    print("blow-up of u0 = 1 on the half line, flux exponent p")
    print(f"{'p':>5} {'h':>7} {'T_hat':>12} {'bracket width':>14} {'fit r^2':>9}")
    for p in (1.5, 2.0, 3.0):
        for h in (0.008, 0.004):
            grid = build_grid(half_line(3.0), h)
            _, rep = run(sample_initial(constant(1.0), grid), SolverConfig(p=p), 1.0)
            lo, hi = rep.T_bracket
            print(f"{p:>5} {h:>7} {rep.T_hat:>12.8f} {hi - lo:>14.2e} "
                  f"{rep.fit_r2:>9.6f}")
    print()
    print("halving h roughly quarters the change in T_hat; the scheme is")
    print("first order in time but the estimate converges through the")
    print("resolved-window extrapolation.")
    estimates = []
    for h in (0.004, 0.002, 0.001):
        grid = build_grid(half_line(3.0), h)
        _, rep = run(sample_initial(constant(1.0), grid), SolverConfig(p=2.0), 0.5)
        estimates.append(rep.T_hat)
    diffs = np.abs(np.diff(estimates))
    print(f"p=2 refinement: T_hat = {estimates}")
    print(f"successive differences {diffs[0]:.2e} -> {diffs[1]:.2e} "
          f"(contraction {diffs[0] / diffs[1]:.2f}x)")


if __name__ == "__main__":
    main()
