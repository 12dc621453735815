"""Uniformly local norms: brute-force oracle, embeddings, covering."""

import math

import numpy as np
import pytest

from ulheat import (
    CoverSpec,
    UlocParams,
    build_grid,
    covering_centers,
    covering_inequality_check,
    custom,
    gaussian,
    half_line,
    half_plane,
    holder_embedding_bound,
    sample_initial,
    uloc_norm,
    vanishing_small_rho,
)


def brute_uloc(values: np.ndarray, h: float, r: float, rho: float) -> float:
    """Direct translation of the definition, O(nodes^2): for every node
    center, sum |f|^r h^N over nodes strictly inside the rho-ball, then
    take the largest root.  Independent of the convolution code path."""
    w = np.abs(values) ** r * h ** values.ndim
    best = 0.0
    if values.ndim == 1:
        n = values.shape[0]
        for i in range(n):
            total = 0.0
            for j in range(n):
                if abs(i - j) * h < rho * (1.0 - 1e-12):
                    total += w[j]
            best = max(best, total)
    else:
        nx, ny = values.shape
        for i in range(nx):
            for j in range(ny):
                total = 0.0
                for a in range(nx):
                    for b in range(ny):
                        d2 = ((i - a) ** 2 + (j - b) ** 2) * h * h
                        if d2 < rho * rho * (1.0 - 1e-12):
                            total += w[a, b]
                best = max(best, total)
    return best ** (1.0 / r)


def test_matches_brute_force_1d():
    rng = np.random.default_rng(3)
    g = build_grid(half_line(2.0), 0.05)
    for _ in range(5):
        f = sample_initial(custom(rng.uniform(0.0, 2.0, g.shape)), g)
        for r, rho in [(1.0, 0.3), (2.0, 0.5), (3.0, 1.0)]:
            fast = uloc_norm(f, UlocParams(r, rho))
            slow = brute_uloc(f.values, g.h, r, rho)
            assert math.isclose(fast, slow, rel_tol=1e-12)


def test_matches_brute_force_2d():
    rng = np.random.default_rng(4)
    g = build_grid(half_plane(0.8, 0.8), 0.1)
    f = sample_initial(custom(rng.uniform(0.0, 2.0, g.shape)), g)
    for r, rho in [(1.0, 0.35), (2.0, 0.55)]:
        fast = uloc_norm(f, UlocParams(r, rho))
        slow = brute_uloc(f.values, g.h, r, rho)
        assert math.isclose(fast, slow, rel_tol=1e-12)


def test_exponential_profile_frozen_value():
    # e^-x on the half line, r=1, rho=1: the best ball sits at the origin
    # where the discrete ball sees [0, 1); the continuum value of the
    # one-sided integral over (-1, 1) intersected with [0, inf) is 1 - e^-2
    # at center x=1, and the lattice answer lands within O(h) of it
    g = build_grid(half_line(10.0), 0.01)
    x = g.axes()[0]
    f = sample_initial(custom(np.exp(-x)), g)
    got = uloc_norm(f, UlocParams(1.0, 1.0))
    assert math.isclose(got, 0.8676282916200461, rel_tol=1e-12)
    assert math.isclose(got, 1.0 - math.exp(-2.0), rel_tol=1e-2)


def test_r_inf_is_sup_norm():
    g = build_grid(half_line(3.0), 0.01)
    f = sample_initial(gaussian(2.7, 0.4, center=1.3), g)
    assert uloc_norm(f, UlocParams(math.inf, 1.0)) == f.values.max()


def test_rho_inf_is_global_norm():
    g = build_grid(half_line(3.0), 0.01)
    f = sample_initial(custom(np.ones(g.shape)), g)
    got = uloc_norm(f, UlocParams(2.0, math.inf))
    assert math.isclose(got, math.sqrt(3.0 + 0.01), rel_tol=1e-12)


def test_under_resolved_ball_rejected():
    g = build_grid(half_line(1.0), 0.05)
    f = sample_initial(custom(np.ones(g.shape)), g)
    with pytest.raises(ValueError, match="under-resolved"):
        uloc_norm(f, UlocParams(2.0, 0.05))


def test_param_validation():
    with pytest.raises(ValueError):
        UlocParams(0.5, 1.0)
    with pytest.raises(ValueError):
        UlocParams(2.0, 0.0)


def test_homogeneity_exact():
    rng = np.random.default_rng(5)
    g = build_grid(half_line(4.0), 0.02)
    vals = rng.uniform(0.0, 1.0, g.shape)
    f = sample_initial(custom(vals), g)
    fc = sample_initial(custom(3.7 * vals), g)
    for r in (1.0, 2.0, math.inf):
        a = uloc_norm(f, UlocParams(r, 0.5))
        b = uloc_norm(fc, UlocParams(r, 0.5))
        assert abs(b - 3.7 * a) <= 1e-12 * max(1.0, b)


def test_monotone_in_rho():
    rng = np.random.default_rng(6)
    g = build_grid(half_line(4.0), 0.02)
    f = sample_initial(custom(rng.uniform(0.0, 1.0, g.shape)), g)
    radii = [0.25, 0.5, 1.0, 2.0]
    vals = [uloc_norm(f, UlocParams(2.0, rho)) for rho in radii]
    assert all(a <= b + 1e-14 for a, b in zip(vals, vals[1:]))


def test_vanishing_small_rho_trend():
    g = build_grid(half_line(6.0), 0.01)
    x = g.axes()[0]
    f = sample_initial(custom(np.exp(-x * x)), g)
    vals = vanishing_small_rho(f, 1.0, [2.0, 1.0, 0.5, 0.25, 0.125])
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.3 * vals[0]


def test_holder_embedding_with_slack():
    rng = np.random.default_rng(7)
    g = build_grid(half_line(3.0), 0.01)
    rho = 0.5
    slack = 1.0 + 10.0 * g.h / rho
    for _ in range(20):
        f = sample_initial(custom(rng.uniform(0.0, 2.0, g.shape)), g)
        lhs, rhs = holder_embedding_bound(f, 1.0, 2.0, rho)
        assert lhs <= slack * rhs


def test_covering_center_counts():
    assert covering_centers(1, 1.0).M == 8
    assert covering_centers(2, 1.0).M == 60


def test_cover_certificate():
    for N in (1, 2):
        assert covering_centers(N, 1.0).certify(n_probes=8192)


def test_covering_inequality_on_fields():
    rng = np.random.default_rng(8)
    g = build_grid(half_line(8.0), 0.02)
    for _ in range(10):
        f = sample_initial(custom(rng.uniform(0.0, 1.0, g.shape)), g)
        lhs, rhs = covering_inequality_check(f, r=2.0, rho=1.0)
        assert lhs <= rhs
