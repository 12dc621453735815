"""Uniformly local L^r norms of sampled fields.

The norm ||f||_{r,rho} is the supremum over ball centers xbar in the closed
domain of the L^r norm of f on the intersection of the domain with the open
ball B(xbar, rho).  Discretely: centers range over the grid nodes, a node y
belongs to the ball iff |y - xbar| < rho, and each node carries cell weight
h^N.  Both choices introduce O(h) error, absorbed by the slack factors the
property checks use.

r = inf collapses to the plain sup-norm (the uniformly local L^inf space is
just L^inf).  rho = inf is accepted and gives the global L^r norm on the
truncated domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage, signal
from scipy.stats import qmc

from .domains import SampledField


@dataclass(frozen=True)
class UlocParams:
    """Exponent r in [1, inf] and ball radius rho > 0."""

    r: float
    rho: float

    def __post_init__(self):
        if not (self.r >= 1.0):
            raise ValueError("r must be >= 1 (or inf)")
        if not (self.rho > 0.0):
            raise ValueError("rho must be positive")


def _ball_reach(rho: float, h: float) -> int:
    """Largest k with k*h < rho, robust to roundoff at exact multiples."""
    return int(math.floor(rho * (1.0 - 1e-12) / h))


def _ball_sums(values: np.ndarray, h: float, r: float, rho: float) -> np.ndarray:
    """Sum of |f|^r h^N over the open rho-ball around every node."""
    w = np.abs(values) ** r * h ** values.ndim
    K = _ball_reach(rho, h)
    if values.ndim == 1:
        kernel = np.ones(2 * K + 1)
        if kernel.size > 512:
            sums = signal.fftconvolve(w, kernel, mode="same")
        else:
            sums = np.convolve(w, kernel, mode="same")
    else:
        dx = np.arange(-K, K + 1)
        mask = (dx[:, None] ** 2 + dx[None, :] ** 2) * h * h < rho * rho * (1.0 - 1e-12)
        kernel = mask.astype(np.float64)
        if kernel.size > 1024:
            sums = signal.fftconvolve(w, kernel, mode="same")
        else:
            sums = ndimage.convolve(w, kernel, mode="constant", cval=0.0)
    return np.maximum(sums, 0.0)


def uloc_norm(f: SampledField, params: UlocParams) -> float:
    """sup over grid-node centers of the local L^r norm on rho-balls."""
    r, rho = params.r, params.rho
    if f.grid.n_nodes == 0:
        raise ValueError("empty domain")
    if math.isinf(r):
        return f.sup()
    if math.isinf(rho):
        total = float(np.sum(np.abs(f.values) ** r)) * f.h ** f.grid.ndim
        return total ** (1.0 / r)
    if rho < 2.0 * f.h:
        raise ValueError("ball under-resolved: rho must be at least 2h")
    sums = _ball_sums(f.values, f.h, r, rho)
    return float(np.max(sums)) ** (1.0 / r)


def holder_embedding_bound(f: SampledField, r: float, q: float, rho: float) -> tuple[float, float]:
    """Both sides of the local Holder embedding between exponents r <= q.

    Returns (lhs, rhs) with lhs = ||f||_{r,rho} and
    rhs = (omega_N rho^N)^(1/r - 1/q) ||f||_{q,rho}, omega_N the unit-ball
    measure (2 in 1D, pi in 2D).  Up to O(h/rho) quadrature slack on the
    ball measure, lhs <= rhs.
    """
    if not (1.0 <= r <= q) or math.isinf(q):
        raise ValueError("need 1 <= r <= q < inf")
    N = f.grid.ndim
    omega = 2.0 if N == 1 else math.pi
    lhs = uloc_norm(f, UlocParams(r, rho))
    rhs = (omega * rho ** N) ** (1.0 / r - 1.0 / q) * uloc_norm(f, UlocParams(q, rho))
    return lhs, rhs


def vanishing_small_rho(f: SampledField, r: float, rho_sequence) -> list[float]:
    """||f||_{r,rho_k} along a decreasing radius sequence.

    For globally L^r data the values decrease toward 0 as rho shrinks; the
    caller asserts the trend (down to grid resolution, rho >= 2h).
    """
    return [uloc_norm(f, UlocParams(r, rho)) for rho in rho_sequence]


@dataclass(frozen=True)
class CoverSpec:
    """Finite cover of B(0, 2 rho) by M balls of radius rho/2.

    M depends only on the dimension: the centers are a fixed lattice, not a
    minimal cover.
    """

    N: int
    centers: np.ndarray  # (M, N)
    radius: float
    M: int

    def covers(self, points: np.ndarray) -> np.ndarray:
        """True per point if it lies in some cover ball."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        d2 = ((pts[:, None, :] - self.centers[None, :, :]) ** 2).sum(axis=2)
        return (d2 < self.radius ** 2).any(axis=1)

    def certify(self, n_probes: int = 10_000) -> bool:
        """Probe the covered ball with quasi-random points; True if all hit."""
        rho2 = 2.0 * self.radius  # the construction pairs radius rho/2 with ball 2 rho
        sampler = qmc.Halton(d=self.N, scramble=False)
        probes = []
        while sum(len(p) for p in probes) < n_probes:
            raw = (np.asarray(sampler.random(4 * n_probes)) - 0.5) * 2.0 * 2.0 * rho2
            raw = raw.reshape(-1, self.N)
            inside = (raw ** 2).sum(axis=1) < (2.0 * rho2) ** 2
            probes.append(raw[inside])
        pts = np.concatenate(probes)[:n_probes]
        return bool(self.covers(pts).all())


def covering_centers(N: int, rho: float = 1.0) -> CoverSpec:
    """Lattice centers covering B(0, 2 rho) with balls of radius rho/2.

    Half-spacing offset lattice with spacing rho/2, kept when the center
    lies inside B(0, 2.25 rho) and its ball meets B(0, 2 rho).  Gives M = 8
    in 1D and M = 60 (<= 81) in 2D.
    """
    if N not in (1, 2):
        raise ValueError("only N = 1 and N = 2 are supported")
    s = rho / 2.0
    line = (np.arange(-5, 5) + 0.5) * s
    if N == 1:
        cand = line[:, None]
    else:
        gx, gy = np.meshgrid(line, line, indexing="ij")
        cand = np.column_stack([gx.ravel(), gy.ravel()])
    norm2 = (cand ** 2).sum(axis=1)
    keep = norm2 < (2.25 * rho) ** 2 * (1.0 - 1e-12)
    keep &= norm2 < (2.5 * rho) ** 2 * (1.0 - 1e-12)  # ball meets B(0, 2 rho)
    centers = cand[keep]
    return CoverSpec(N=N, centers=centers, radius=s, M=len(centers))


def covering_inequality_check(f: SampledField, r: float, rho: float) -> tuple[float, float]:
    """(||f||_{r,2rho}^r, M ||f||_{r,rho}^r) with M from covering_centers.

    Doubling the radius costs at most the cover cardinality: every 2rho ball
    is covered by M balls of radius rho recentred at grid nodes.
    """
    if math.isinf(r):
        raise ValueError("covering inequality applies to finite r")
    M = covering_centers(f.grid.ndim).M
    lhs = uloc_norm(f, UlocParams(r, 2.0 * rho)) ** r
    rhs = M * uloc_norm(f, UlocParams(r, rho)) ** r
    return lhs, rhs


def psi_history(traj, r: float, rho: float, t: float) -> float:
    """Running sup over sample times tau <= t of ||u(tau)||_{r,rho}^r.

    traj must carry uloc norms recorded for the (r, rho) pair.
    """
    if math.isinf(r):
        raise ValueError("psi is defined for finite r")
    series = traj.norm_series(r, rho)
    times = np.asarray(traj.t)
    mask = times <= t
    if not mask.any():
        raise ValueError(f"no samples at or before t={t}")
    return float(np.max(np.asarray(series)[mask] ** r))
