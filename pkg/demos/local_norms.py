"""Uniformly local Lebesgue norms and their structural inequalities.

||f||_{r,rho} takes the L^r norm on every rho-ball and keeps the worst
one, so slowly decaying data that global norms reject still have finite
size.  The script evaluates the norm across radii and exponents and
spot-checks the three inequalities the theory leans on: monotonicity in
rho, the covering bound for doubled radii, and the Holder embedding
between exponents.
"""

import math

import numpy as np

from ulheat import (
    UlocParams,
    build_grid,
    covering_centers,
    covering_inequality_check,
    custom,
    holder_embedding_bound,
    sample_initial,
    uloc_norm,
    half_line,
)


def main():
    grid = build_grid(half_line(40.0), 0.02)
    x = grid.axes()[0]
    f = sample_initial(custom((1.0 + x) ** -0.4), grid)
    print("f(x) = (1+x)^(-0.4): decays too slowly for global L^2 on the")
    print("half line, but every ball sees a bounded piece")
    print()
    print(f"{'rho':>6} {'||f||_2,rho':>12}")
    for rho in (0.5, 1.0, 2.0, 4.0):
        v = uloc_norm(f, UlocParams(2.0, rho))
        print(f"{rho:>6} {v:>12.6f}")
    print(f"{'inf':>6} {uloc_norm(f, UlocParams(2.0, math.inf)):>12.6f}"
          "   (global norm, dominated by the domain length)")
    print()

    lhs, rhs = covering_inequality_check(f, r=2.0, rho=1.0)
    M = covering_centers(1).M
    print(f"covering bound: ||f||_{{2,2rho}}^2 = {lhs:.4f} <= "
          f"M ||f||_{{2,rho}}^2 = {rhs:.4f}  (M = {M} balls)")

    el, er = holder_embedding_bound(f, 1.0, 2.0, 1.0)
    print(f"Holder embedding: ||f||_{{1,rho}} = {el:.4f} <= "
          f"(2 rho)^(1/2) ||f||_{{2,rho}} = {er:.4f}")
    print()

    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(200):
        g = sample_initial(custom(rng.uniform(0.0, 1.0, grid.shape)), grid)
        vals = [uloc_norm(g, UlocParams(2.0, rho)) for rho in (0.5, 1.0, 2.0)]
        worst = max(worst, vals[0] - vals[1], vals[1] - vals[2])
    print(f"monotonicity in rho over 200 random fields: worst increase "
          f"violation = {max(worst, 0.0):.2e}")


if __name__ == "__main__":
    main()
