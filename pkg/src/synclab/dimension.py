"""Generalized-dimension spectrum of 1-d point sets.

The estimator counts, for each radius r of a geometric grid, how many sample
points fall within distance r of each point (closed balls, self included),
turns the counts into the order-q correlation sums, and fits their log-log
slope. The q = 1 case uses the information-dimension form (mean log count).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError

DEFAULT_Q_GRID = (-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0)
MIN_POINTS = 100_000
MIN_DECADES = 1.5
Q_ONE_GUARD = 1e-6


def default_r_grid(r_lo: float = 1e-3, r_hi: float = 1e-1, n: int = 24) -> np.ndarray:
    return np.geomspace(r_lo, r_hi, n)


def ball_counts(points: np.ndarray, r: float) -> np.ndarray:
    """Number of sample points within distance r of each point (closed ball,
    self-count included, so every count is >= 1)."""
    pts = np.sort(np.asarray(points, dtype=float))
    lo = np.searchsorted(pts, pts - r, side="left")
    hi = np.searchsorted(pts, pts + r, side="right")
    return hi - lo


@dataclass(frozen=True, eq=False)
class DimensionSpectrum:
    """Fitted dimension per q with per-q fit diagnostics."""

    q_grid: np.ndarray
    d_values: np.ndarray
    fit_r2: np.ndarray
    r_grid: np.ndarray
    n_points: int

    def is_monotone(self, tol: float = 0.1) -> bool:
        """Dimensions should not increase with q beyond estimator noise."""
        return bool(np.all(np.diff(self.d_values) <= tol))


def _fit(xs: np.ndarray, ys: np.ndarray):
    slope, intercept = np.polyfit(xs, ys, 1)
    pred = slope * xs + intercept
    ssres = float(((ys - pred) ** 2).sum())
    sstot = float(((ys - ys.mean()) ** 2).sum())
    if sstot < 1e-300:
        r2 = 1.0 if ssres < 1e-12 else 0.0
    else:
        r2 = 1.0 - ssres / sstot
    return float(slope), r2


def dq_estimate(points: np.ndarray, q_grid=DEFAULT_Q_GRID,
                r_grid: np.ndarray | None = None,
                min_points: int = MIN_POINTS) -> DimensionSpectrum:
    """Estimate the dimension spectrum of a 1-d sample.

    Needs at least 1e5 points and a radius grid spanning 1.5 decades.
    q values within 1e-6 of 1 are rejected unless exactly 1, which is
    handled by the information-dimension branch.
    """
    pts = np.sort(np.asarray(points, dtype=float))
    n = pts.size
    if n < min_points:
        raise DomainError(f"need at least {min_points} points, got {n}")
    if r_grid is None:
        r_grid = default_r_grid()
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.size < 2 or np.any(r_grid <= 0.0):
        raise DomainError("r_grid must hold at least two positive radii")
    if np.log10(r_grid.max() / r_grid.min()) < MIN_DECADES:
        raise DomainError(f"r_grid must span at least {MIN_DECADES} decades")
    q_grid = np.asarray(q_grid, dtype=float)
    near_one = np.abs(q_grid - 1.0) < Q_ONE_GUARD
    if np.any(near_one & (q_grid != 1.0)):
        raise DomainError("q values within 1e-6 of 1 are ill-conditioned; "
                          "use q = 1 exactly for the information dimension")

    log_r = np.log(r_grid)
    # per radius: correlation sums for every q plus the mean log count
    corr = np.empty((r_grid.size, q_grid.size))
    for i, r in enumerate(r_grid):
        lo = np.searchsorted(pts, pts - r, side="left")
        hi = np.searchsorted(pts, pts + r, side="right")
        frac = (hi - lo) / n
        log_frac = np.log(frac)
        for jq, q in enumerate(q_grid):
            if q == 1.0:
                corr[i, jq] = log_frac.mean()
            else:
                corr[i, jq] = np.exp((q - 1.0) * log_frac).mean()

    d_values = np.empty(q_grid.size)
    fit_r2 = np.empty(q_grid.size)
    for jq, q in enumerate(q_grid):
        if q == 1.0:
            slope, r2 = _fit(log_r, corr[:, jq])
            d_values[jq] = slope
        else:
            slope, r2 = _fit(log_r, np.log(corr[:, jq]))
            d_values[jq] = slope / (q - 1.0)
        fit_r2[jq] = r2
    return DimensionSpectrum(q_grid=q_grid, d_values=d_values, fit_r2=fit_r2,
                             r_grid=r_grid, n_points=n)


def delta_dq(master: DimensionSpectrum, slave: DimensionSpectrum):
    """Pointwise |D_q difference| between two spectra on the same q grid."""
    if (master.q_grid.size != slave.q_grid.size
            or np.any(master.q_grid != slave.q_grid)):
        raise ShapeError("spectra live on different q grids")
    deltas = np.abs(master.d_values - slave.d_values)
    return list(zip(master.q_grid.tolist(), deltas.tolist()))
