"""Domains, grids, and initial data.

The PDE lives on a box-like domain: half-line (0, inf), interval (0, L),
half-plane (0, inf) x R, or rectangle (0, Lx) x (0, Ly).  Unbounded
directions are truncated at a finite length; faces created by truncation
are "artificial" and get a reflective (homogeneous Neumann) closure, while
faces of the original domain are "physical" and carry the nonlinear flux
du/dn = |u|^(p-1) u.

Grids are uniform and vertex-centered: nodes sit at i*h along each axis,
including both faces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# node tags
INTERIOR = 0
PHYSICAL = 1
ARTIFICIAL = 2

_FACE_LAYOUT = {
    # kind -> per-axis (low face, high face), entries "physical" or "artificial"
    "halfline": (("physical", "artificial"),),
    "interval": (("physical", "physical"),),
    "halfplane": (("physical", "artificial"), ("artificial", "artificial")),
    "rectangle": (("physical", "physical"), ("physical", "physical")),
}


@dataclass(frozen=True)
class Domain:
    """Geometric description of the (possibly truncated) domain.

    Lx is the extent of axis 0; for halfline/halfplane it is the truncation
    length of the unbounded direction.  Ly is the axis-1 extent and must be
    given exactly for the two-dimensional kinds.
    """

    kind: str
    Lx: float
    Ly: float | None = None

    def __post_init__(self):
        if self.kind not in _FACE_LAYOUT:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if not (np.isfinite(self.Lx) and self.Lx > 0):
            raise ValueError("Lx must be positive and finite")
        if self.ndim == 2:
            if self.Ly is None or not (np.isfinite(self.Ly) and self.Ly > 0):
                raise ValueError(f"{self.kind} requires positive Ly")
        elif self.Ly is not None:
            raise ValueError(f"{self.kind} takes no Ly")

    @property
    def ndim(self) -> int:
        return len(_FACE_LAYOUT[self.kind])

    @property
    def lengths(self) -> tuple[float, ...]:
        return (self.Lx,) if self.ndim == 1 else (self.Lx, self.Ly)

    @property
    def face_kinds(self) -> tuple[tuple[str, str], ...]:
        return _FACE_LAYOUT[self.kind]


def half_line(L: float) -> Domain:
    """(0, inf), truncated at L; the endpoint x=0 carries the flux."""
    return Domain("halfline", L)


def interval(L: float) -> Domain:
    """(0, L); both endpoints carry the flux."""
    return Domain("interval", L)


def half_plane(Lx: float, Ly: float) -> Domain:
    """{x > 0} truncated to (0, Lx) x (0, Ly); only the x=0 face is physical."""
    return Domain("halfplane", Lx, Ly)


def rectangle(Lx: float, Ly: float) -> Domain:
    """(0, Lx) x (0, Ly); all four faces carry the flux."""
    return Domain("rectangle", Lx, Ly)


@dataclass(frozen=True)
class Grid:
    """Uniform vertex-centered grid with per-node boundary tags."""

    domain: Domain
    h: float
    shape: tuple[int, ...]
    boundary_class: np.ndarray  # int8 array of INTERIOR/PHYSICAL/ARTIFICIAL

    @property
    def ndim(self) -> int:
        return self.domain.ndim

    def axes(self) -> tuple[np.ndarray, ...]:
        """Node coordinates along each axis (positions i*h)."""
        return tuple(np.arange(n) * self.h for n in self.shape)

    def coords(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays broadcast to the full grid shape."""
        if self.ndim == 1:
            return self.axes()
        return tuple(np.meshgrid(*self.axes(), indexing="ij"))

    @property
    def n_nodes(self) -> int:
        return int(np.prod(self.shape))


def build_grid(domain: Domain, h: float) -> Grid:
    """Discretize the domain with spacing h.

    h must divide every axis length to within a 1e-9 relative rounding
    tolerance, so that nodes land exactly on i*h and the faces are nodes.
    """
    if not (np.isfinite(h) and h > 0):
        raise ValueError("h must be positive and finite")
    shape = []
    for L in domain.lengths:
        ratio = L / h
        cells = round(ratio)
        if cells < 1 or abs(ratio - cells) > 1e-9 * max(1.0, ratio):
            raise ValueError(f"h={h} does not divide axis length {L}")
        shape.append(cells + 1)
    shape = tuple(shape)

    tags = np.zeros(shape, dtype=np.int8)
    # artificial faces first so that physical tags win at shared corners
    for rank in (ARTIFICIAL, PHYSICAL):
        name = "artificial" if rank == ARTIFICIAL else "physical"
        for axis, (lo, hi) in enumerate(domain.face_kinds):
            if lo == name:
                tags[_face_index(len(shape), axis, 0)] = rank
            if hi == name:
                tags[_face_index(len(shape), axis, -1)] = rank
    tags.setflags(write=False)
    return Grid(domain=domain, h=float(h), shape=shape, boundary_class=tags)


def _face_index(ndim: int, axis: int, side: int):
    idx = [slice(None)] * ndim
    idx[axis] = side
    return tuple(idx)


@dataclass(frozen=True)
class SampledField:
    """Node values of u(.,t) or of an initial datum on a grid.

    Values must be finite everywhere; NaN/Inf are rejected at construction
    so that norm and solver code can assume clean input.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def domain(self) -> Domain:
        return self.grid.domain

    @property
    def h(self) -> float:
        return self.grid.h

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def with_values(self, values: np.ndarray) -> "SampledField":
        return SampledField(self.grid, values)


_PROFILES = ("constant", "power_decay", "bounded_power", "gaussian", "custom")


@dataclass(frozen=True)
class InitialData:
    """Named initial profile, evaluated radially from the origin.

    constant:       lam
    power_decay:    lam * |x|^(-beta) on |x| < delta, else 0
    bounded_power:  lam * (1 + |x|)^(-beta)
    gaussian:       lam * exp(-|x - center|^2 / (2 width^2))
    custom:         caller-supplied node values (lam still multiplies them)
    """

    profile: str
    lam: float = 1.0
    beta: float = 0.0
    delta: float = 1.0
    width: float = 1.0
    center: float = 0.0
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.profile not in _PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")
        if not np.isfinite(self.lam):
            raise ValueError("lam must be finite")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.profile == "power_decay" and self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.profile == "gaussian" and self.width <= 0:
            raise ValueError("width must be positive")
        if self.profile == "custom" and self.values is None:
            raise ValueError("custom profile requires values")

    def scaled(self, factor: float) -> "InitialData":
        """Same profile with lam multiplied by factor."""
        return InitialData(self.profile, self.lam * factor, self.beta, self.delta,
                           self.width, self.center, self.values)


def constant(lam: float) -> InitialData:
    return InitialData("constant", lam)


def power_decay(lam: float, beta: float, delta: float) -> InitialData:
    return InitialData("power_decay", lam, beta=beta, delta=delta)


def bounded_power(lam: float, beta: float) -> InitialData:
    return InitialData("bounded_power", lam, beta=beta)


def gaussian(lam: float, width: float, center: float = 0.0) -> InitialData:
    return InitialData("gaussian", lam, width=width, center=center)


def custom(values: np.ndarray, lam: float = 1.0) -> InitialData:
    return InitialData("custom", lam, values=np.asarray(values, dtype=np.float64))


def sample_initial(data: InitialData, grid: Grid) -> SampledField:
    """Evaluate the profile at the grid nodes.

    The result is exactly lam times the lam=1 evaluation (the scale factor
    is applied as a single final multiply), so rescaled data stay exactly
    proportional nodewise.
    """
    if data.profile == "custom":
        raw = np.asarray(data.values, dtype=np.float64)
        if raw.shape != grid.shape:
            raise ValueError(f"custom values shape {raw.shape} does not match grid {grid.shape}")
        raw = raw.copy()
    else:
        coords = grid.coords()
        if grid.ndim == 1:
            radius = np.abs(coords[0] - (data.center if data.profile == "gaussian" else 0.0))
        else:
            x0 = coords[0] - (data.center if data.profile == "gaussian" else 0.0)
            radius = np.sqrt(x0 ** 2 + coords[1] ** 2)

        if data.profile == "constant":
            raw = np.ones(grid.shape)
        elif data.profile == "bounded_power":
            raw = (1.0 + radius) ** (-data.beta)
        elif data.profile == "gaussian":
            raw = np.exp(-0.5 * (radius / data.width) ** 2)
        else:  # power_decay
            raw = _power_decay_raw(radius, data.beta, data.delta, grid)

    return SampledField(grid, data.lam * raw)


def _power_decay_raw(radius: np.ndarray, beta: float, delta: float, grid: Grid) -> np.ndarray:
    N = grid.ndim
    if beta >= N:
        # |x|^(-beta) is not locally integrable at the origin in N dimensions,
        # so no cell-average value exists for the singular node
        raise ValueError("non-integrable singularity at this grid")
    with np.errstate(divide="ignore"):
        raw = np.where(radius < delta, radius ** (-beta), 0.0) if beta > 0 else \
            np.where(radius < delta, 1.0, 0.0)
    if beta > 0:
        # singular node: replace with the cell average of |x|^(-beta) near 0
        h = grid.h
        if N == 1:
            origin_value = h ** (-beta) / (1.0 - beta)
        else:
            # average over the quarter-disk of radius h at the corner
            origin_value = (2.0 / (2.0 - beta)) * h ** (-beta)
        raw[radius == 0.0] = origin_value
    return raw
