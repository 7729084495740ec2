"""Quadratic unimodal maps on I = [-1, 1] and histogram densities on I.

The map family is x -> c*(1 - 2*x^2) with c in (0, 1]. Its invariant density
can be obtained three ways: the closed-form arcsine law (c = 1 only), the
fixed vector of the transfer-operator discretization on a uniform partition,
or a long-orbit visit histogram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DomainError, ShapeError, UnsupportedError

MASS_TOL = 1e-12

Provider = Literal["analytic", "ulam", "orbit-histogram"]

ORBIT_BURN_IN = 1_000
MIN_ORBIT_BUDGET = 100_000


def bin_edges(n_bins: int) -> np.ndarray:
    """Edges of the uniform n-bin partition of [-1, 1]."""
    if n_bins < 1:
        raise DomainError(f"n_bins must be >= 1, got {n_bins}")
    return np.linspace(-1.0, 1.0, n_bins + 1)


def bin_centers(n_bins: int) -> np.ndarray:
    e = bin_edges(n_bins)
    return 0.5 * (e[:-1] + e[1:])


def bin_index(x, n_bins: int):
    """Bin of each point, left-closed: a point on an edge goes to the right
    bin, and x = 1 goes to the last bin."""
    e = bin_edges(n_bins)
    j = np.searchsorted(e, x, side="right") - 1
    return np.clip(j, 0, n_bins - 1)


@dataclass(frozen=True)
class QuadraticMap:
    """The unimodal map x -> c*(1 - 2*x^2) on I.

    Maps I into [-c, c]; the critical point is 0 with value c.
    """

    c: float

    def __post_init__(self):
        if not 0.0 < self.c <= 1.0:
            raise DomainError(f"map parameter c must lie in (0, 1], got {self.c}")

    def __call__(self, x):
        return self.c * (1.0 - 2.0 * x * x)

    def eval(self, x):
        """Checked evaluation; rejects points outside I."""
        if np.any(np.abs(x) > 1.0):
            raise DomainError(f"point outside [-1, 1]: {x}")
        return self(x)

    def derivative(self, x):
        return -4.0 * self.c * x

    def fixed_point(self) -> float:
        """The positive fixed point c*(1 - 2*x^2) = x."""
        return (-1.0 + math.sqrt(1.0 + 8.0 * self.c**2)) / (4.0 * self.c)


@dataclass(frozen=True, eq=False)
class DensityOnI:
    """Probability mass per bin of a uniform partition of [-1, 1].

    ``weights[j]`` is the mass of bin j; the density value on the bin is
    ``weights[j] * n_bins / 2``. Instances are immutable.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ShapeError("weights must be a nonempty 1-d array")
        if np.any(w < 0.0):
            raise DomainError("bin masses must be nonnegative")
        total = w.sum()
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"bin masses must sum to 1 within {MASS_TOL}, got {total!r}")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n_bins(self) -> int:
        return self.weights.size

    @property
    def bin_width(self) -> float:
        return 2.0 / self.n_bins

    @property
    def edges(self) -> np.ndarray:
        return bin_edges(self.n_bins)

    @property
    def centers(self) -> np.ndarray:
        return bin_centers(self.n_bins)

    def density_values(self) -> np.ndarray:
        return self.weights * (self.n_bins / 2.0)

    def cdf_knots(self) -> np.ndarray:
        """CDF values at the bin edges (piecewise-linear CDF)."""
        return np.concatenate(([0.0], np.cumsum(self.weights)))

    def value_at(self, x):
        """Density value at points of I (piecewise constant)."""
        if np.any(np.abs(x) > 1.0):
            raise DomainError(f"point outside [-1, 1]: {x}")
        return self.density_values()[bin_index(x, self.n_bins)]

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw n points by inverse CDF with uniform jitter inside the bin."""
        u = rng.random(n)
        j = np.minimum(np.searchsorted(np.cumsum(self.weights), u, side="right"),
                       self.n_bins - 1)
        return self.edges[j] + rng.random(n) * self.bin_width

    @classmethod
    def uniform(cls, n_bins: int) -> "DensityOnI":
        return cls(np.full(n_bins, 1.0 / n_bins))

    @classmethod
    def point_mass(cls, n_bins: int, j: int) -> "DensityOnI":
        w = np.zeros(n_bins)
        w[j] = 1.0
        return cls(w)

    @classmethod
    def from_samples(cls, xs: np.ndarray, n_bins: int) -> "DensityOnI":
        counts, _ = np.histogram(xs, bins=bin_edges(n_bins))
        if counts.sum() != np.size(xs):
            raise DomainError("samples outside [-1, 1]")
        return cls(counts / counts.sum())


def eval_map(m: QuadraticMap, x: float) -> float:
    """Checked single-point evaluation of the map."""
    return m.eval(x)


def orbit(m: QuadraticMap, x0: float, n: int) -> np.ndarray:
    """Forward orbit [x0, T(x0), ..., T^(n-1)(x0)] of length n."""
    if n < 1:
        raise DomainError(f"orbit length must be >= 1, got {n}")
    if abs(x0) > 1.0:
        raise DomainError(f"initial point outside [-1, 1]: {x0}")
    return _kernels.iterate_map(m.c, float(x0), int(n))


def ulam_matrix(m: QuadraticMap, n_bins: int) -> np.ndarray:
    """Row-stochastic discretization of the map's transfer operator.

    Entry (i, j) is the Lebesgue fraction of bin i that lands in bin j,
    computed exactly from the two monotone branches of the preimage
    (no sampling). Rows sum to 1 up to rounding and are renormalized.
    """
    e = bin_edges(n_bins)
    w = 2.0 / n_bins
    c = m.c
    P = np.zeros((n_bins, n_bins))

    def branch_pos(z):
        # preimage of z on [0, 1]; z must already be clipped to [-c, c]
        return math.sqrt(max(0.0, (1.0 - z / c) / 2.0))

    for j in range(n_bins):
        lo = max(e[j], -c)
        hi = min(e[j + 1], c)
        if lo >= hi:
            continue
        s_lo = branch_pos(lo)
        s_hi = branch_pos(hi)
        # decreasing branch on [0,1] gives [s_hi, s_lo]; mirror gives the rest
        for u, v in ((s_hi, s_lo), (-s_lo, -s_hi)):
            if v <= u:
                continue
            i0 = int(np.clip((u + 1.0) // w, 0, n_bins - 1))
            i1 = int(np.clip((v + 1.0) // w, 0, n_bins - 1))
            for i in range(i0, i1 + 1):
                ov = min(v, e[i + 1]) - max(u, e[i])
                if ov > 0.0:
                    P[i, j] += ov / w

    rows = P.sum(axis=1)
    if np.any(np.abs(rows - 1.0) > 1e-9):
        raise AssertionError("transfer-matrix rows failed to cover the partition")
    return P / rows[:, None]


def _power_iterate(P: np.ndarray, v0: np.ndarray, tol: float, max_iter: int):
    v = v0.copy()
    for it in range(1, max_iter + 1):
        v2 = v @ P
        v2 /= v2.sum()
        change = np.abs(v2 - v).sum()
        v = v2
        if change < tol:
            return v, it
    raise ConvergenceError(
        f"power iteration: L1 change {change:.3e} > {tol:.1e} after {max_iter} steps",
        last_iterate=v, last_change=change, iterations=max_iter)


def invariant_density(m: QuadraticMap, provider: Provider, n_bins: int,
                      budget: int, seed: int = 0) -> DensityOnI:
    """Invariant density of the map, by one of three providers.

    analytic        closed-form arcsine bin masses, c = 1 only.
    ulam            fixed vector of ``ulam_matrix`` by power iteration;
                    ``budget`` is the iteration cap (L1 tolerance 1e-10).
    orbit-histogram visit histogram of an orbit of length ``budget``
                    (>= 1e5) started from a seeded random point, first
                    1000 iterates discarded.
    """
    if provider == "analytic":
        if m.c != 1.0:
            raise UnsupportedError(f"analytic density requires c = 1, got c = {m.c}")
        masses = np.diff(np.arcsin(bin_edges(n_bins))) / np.pi
        return DensityOnI(masses / masses.sum())
    if provider == "ulam":
        P = ulam_matrix(m, n_bins)
        v, _ = _power_iterate(P, np.full(n_bins, 1.0 / n_bins), 1e-10, int(budget))
        return DensityOnI(v)
    if provider == "orbit-histogram":
        if budget < MIN_ORBIT_BUDGET:
            raise DomainError(f"orbit budget must be >= {MIN_ORBIT_BUDGET}, got {budget}")
        rng = np.random.Generator(np.random.PCG64(seed))
        x0 = rng.uniform(-1.0, 1.0)
        xs = orbit(m, x0, int(budget))
        return DensityOnI.from_samples(xs[ORBIT_BURN_IN:], n_bins)
    raise UnsupportedError(f"unknown density provider: {provider!r}")
