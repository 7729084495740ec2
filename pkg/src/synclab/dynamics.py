"""Coupled deterministic orbits and their randomly driven counterpart.

``simulate_coupled`` iterates the unidirectional pair: the master runs
autonomously and the slave relaxes toward it with coupling weight k. The
chain variant replaces the driving term with i.i.d. noise drawn from the
master's invariant density. Empirical histograms, conditional slave
distributions, the transverse Lyapunov estimator, and a synchrony diagnostic
operate on the resulting paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DomainError, InsufficientVisitsError
from .maps import DensityOnI, QuadraticMap, bin_edges
from .measures import Hist2D


@dataclass(frozen=True, eq=False)
class CoupledOrbit:
    """Aligned master/slave trajectories at coupling k (deterministic).

    ``xs[i+1] = T1(xs[i])`` and ``ys[i+1] = (1-k)*T2(ys[i]) + k*T1(xs[i])``;
    c1, c2 are kept so the recurrence is replayable.
    """

    k: float
    xs: np.ndarray
    ys: np.ndarray
    c1: float
    c2: float

    @property
    def n(self) -> int:
        return self.xs.size

    def replay_check(self) -> bool:
        """Re-run the recurrence and compare bit for bit."""
        xs, ys = _kernels.iterate_coupled(self.c1, self.c2, self.k,
                                          self.xs[0], self.ys[0], self.n)
        return bool(np.array_equal(xs, self.xs) and np.array_equal(ys, self.ys))


@dataclass(frozen=True, eq=False)
class ChainPath:
    """Slave trajectory driven by i.i.d. noise with law ``noise``.

    ``ys[i+1] = (1-k)*T2(ys[i]) + k*omega_i``; the noise stream is fully
    determined by ``omega_seed``.
    """

    k: float
    ys: np.ndarray
    omega_seed: int
    c2: float
    noise: DensityOnI

    @property
    def n(self) -> int:
        return self.ys.size

    def replay_check(self) -> bool:
        ys = _draw_and_iterate(self.c2, self.k, self.ys[0], self.n,
                               self.noise, self.omega_seed)
        return bool(np.array_equal(ys, self.ys))


class LyapunovEstimate(NamedTuple):
    value: float
    clipped: int
    n: int


def _check_point(name, v):
    if abs(v) > 1.0:
        raise DomainError(f"{name} outside [-1, 1]: {v}")


def simulate_coupled(t1: QuadraticMap, t2: QuadraticMap, k: float,
                     x0: float, y0: float, n: int) -> CoupledOrbit:
    """Iterate the coupled pair for n points (n-1 steps)."""
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"coupling k must lie in [0, 1], got {k}")
    if n < 1:
        raise DomainError(f"orbit length must be >= 1, got {n}")
    _check_point("x0", x0)
    _check_point("y0", y0)
    xs, ys = _kernels.iterate_coupled(t1.c, t2.c, float(k), float(x0), float(y0), int(n))
    assert abs(xs).max() <= 1.0 and abs(ys).max() <= 1.0
    return CoupledOrbit(k=float(k), xs=xs, ys=ys, c1=t1.c, c2=t2.c)


def _draw_and_iterate(c2, k, y0, n, noise, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    omegas = noise.sample(n - 1, rng)
    return _kernels.iterate_chain(c2, k, float(y0), omegas)


def simulate_chain(t2: QuadraticMap, mu: DensityOnI, k: float, y0: float,
                   n: int, seed: int) -> ChainPath:
    """Iterate the noise-driven slave for n points.

    Noise is sampled from ``mu`` by inverse CDF with uniform jitter inside
    the selected bin, so the path is bit-reproducible from the seed. k = 0
    is rejected (no noise enters; use ``simulate_coupled`` with k = 0).
    """
    if not 0.0 < k <= 1.0:
        raise DomainError(f"chain coupling k must lie in (0, 1], got {k}")
    if n < 1:
        raise DomainError(f"path length must be >= 1, got {n}")
    _check_point("y0", y0)
    ys = _draw_and_iterate(t2.c, float(k), y0, int(n), mu, seed)
    assert abs(ys).max() <= 1.0
    return ChainPath(k=float(k), ys=ys, omega_seed=int(seed), c2=t2.c, noise=mu)


def empirical_counts(o: CoupledOrbit, n_bins: int, burn_in: int = 0):
    """Integer visit counts: per x-bin, per y-bin, and per (x, y) cell."""
    if not 0 <= burn_in < o.n:
        raise DomainError(f"burn_in must lie in [0, {o.n}), got {burn_in}")
    xs, ys = o.xs[burn_in:], o.ys[burn_in:]
    e = bin_edges(n_bins)
    cx, _ = np.histogram(xs, bins=e)
    cy, _ = np.histogram(ys, bins=e)
    cxy, _, _ = np.histogram2d(xs, ys, bins=(e, e))
    return cx, cy, cxy.astype(np.int64)


def empirical_measures(o: CoupledOrbit, n_bins: int, burn_in: int = 0):
    """Occupation histograms (master, slave, joint) of the orbit.

    Histograms start at the first point by default (``burn_in = 0``).
    Marginals of the joint histogram equal the two 1-d histograms exactly
    because all three share the same integer counts.
    """
    cx, cy, cxy = empirical_counts(o, n_bins, burn_in)
    n = o.n - burn_in
    return (DensityOnI(cx / n), DensityOnI(cy / n), Hist2D(cxy / n))


def conditional_slave(o: CoupledOrbit, n_bins: int, x_bin: int) -> DensityOnI:
    """Distribution of the slave over the visit times of one master bin."""
    _, _, cxy = empirical_counts(o, n_bins)
    row = cxy[x_bin]
    visits = int(row.sum())
    if visits < 100:
        raise InsufficientVisitsError(
            f"x-bin {x_bin} visited {visits} times, need >= 100", visits)
    return DensityOnI(row / visits)


def transverse_lyapunov(o: CoupledOrbit, clip: float = 1e-300) -> LyapunovEstimate:
    """Orbit average of log|T2'(y_i)| with the logarithm's argument floored
    at ``clip``; reports how many terms were floored."""
    if clip <= 0.0:
        raise DomainError(f"clip must be positive, got {clip}")
    mags = np.abs(4.0 * o.c2 * o.ys)
    clipped = int((mags < clip).sum())
    value = float(np.log(np.maximum(mags, clip)).mean())
    return LyapunovEstimate(value=value, clipped=clipped, n=o.n)


def transverse_lyapunov_trace(o: CoupledOrbit, clip: float = 1e-300) -> np.ndarray:
    """Running average of log|T2'(y_i)| after each prefix of the orbit."""
    if clip <= 0.0:
        raise DomainError(f"clip must be positive, got {clip}")
    logs = np.log(np.maximum(np.abs(4.0 * o.c2 * o.ys), clip))
    return np.cumsum(logs) / np.arange(1, o.n + 1)


def sync_error(o: CoupledOrbit, tail: int) -> float:
    """Mean |x_i - y_i| over the last ``tail`` points."""
    if not 1 <= tail <= o.n:
        raise DomainError(f"tail must lie in [1, {o.n}], got {tail}")
    return float(np.abs(o.xs[-tail:] - o.ys[-tail:]).mean())
