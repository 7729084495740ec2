"""Histogram measures on I and I^2 and the metrics used by every experiment.

Total variation and Wasserstein-1 compare densities on the shared uniform
partition; the 2-d helpers build product and diagonal measures on the squared
partition; the characteristic-function gap probes weak convergence of a joint
histogram toward the diagonal image of a marginal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .maps import MASS_TOL, DensityOnI, bin_centers, bin_edges

# low-frequency probe grid: product of this set with itself, (0, 0) excluded
_T_VALUES = (-3 * math.pi, -2 * math.pi, -math.pi, math.pi / 2,
             math.pi, 2 * math.pi, 3 * math.pi)
DEFAULT_T_GRID = tuple((t1, t2) for t1 in _T_VALUES for t2 in _T_VALUES
                       if (t1, t2) != (0.0, 0.0))


@dataclass(frozen=True, eq=False)
class Hist2D:
    """Probability mass per cell of the uniform partition of I x I.

    ``weights[i, j]`` is the mass of x-bin i crossed with y-bin j.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] == 0:
            raise ShapeError("weights must be a nonempty square matrix")
        if np.any(w < 0.0):
            raise DomainError("cell masses must be nonnegative")
        total = w.sum()
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"cell masses must sum to 1 within {MASS_TOL}, got {total!r}")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n_bins(self) -> int:
        return self.weights.shape[0]

    def marginal_x(self) -> DensityOnI:
        return DensityOnI(self.weights.sum(axis=1))

    def marginal_y(self) -> DensityOnI:
        return DensityOnI(self.weights.sum(axis=0))


def _check_bins(a: DensityOnI, b: DensityOnI):
    if a.n_bins != b.n_bins:
        raise ShapeError(f"mismatched partitions: {a.n_bins} vs {b.n_bins} bins")


def l1_distance(a: DensityOnI, b: DensityOnI) -> float:
    _check_bins(a, b)
    return float(np.abs(a.weights - b.weights).sum())


def tv_distance(a: DensityOnI, b: DensityOnI) -> float:
    """Total variation distance, half the L1 distance of the bin masses."""
    return 0.5 * l1_distance(a, b)


def w1_distance(a: DensityOnI, b: DensityOnI) -> float:
    """Wasserstein-1 distance on the line: bin width times the summed
    absolute CDF gap at the bin right edges."""
    _check_bins(a, b)
    gap = np.cumsum(a.weights) - np.cumsum(b.weights)
    return float(a.bin_width * np.abs(gap).sum())


def product_measure(a: DensityOnI, b: DensityOnI) -> Hist2D:
    _check_bins(a, b)
    return Hist2D(np.outer(a.weights, b.weights))


def diagonal_pushforward(a: DensityOnI) -> Hist2D:
    return Hist2D(np.diag(a.weights))


def hist2d_l1(a: Hist2D, b: Hist2D) -> float:
    if a.n_bins != b.n_bins:
        raise ShapeError(f"mismatched partitions: {a.n_bins} vs {b.n_bins} bins")
    return float(np.abs(a.weights - b.weights).sum())


def mean_abs_diff(j: Hist2D) -> float:
    """E|X - Y| of the joint histogram, using cell centers."""
    centers = bin_centers(j.n_bins)
    return float((j.weights * np.abs(centers[:, None] - centers[None, :])).sum())


def char_function_gap(j: Hist2D, mu: DensityOnI, t_grid=DEFAULT_T_GRID) -> float:
    """Largest gap, over the probe grid, between the joint histogram's
    characteristic function at (t1, t2) and the marginal's at t1 + t2.

    The second quantity is the characteristic function of the diagonal image
    of ``mu``; both sums use bin centers, so the gap of an exactly diagonal
    histogram vanishes up to rounding. Complex arithmetic is carried as
    paired cosine and sine sums.
    """
    if j.n_bins != mu.n_bins:
        raise ShapeError(f"mismatched partitions: {j.n_bins} vs {mu.n_bins} bins")
    if len(t_grid) == 0:
        raise DomainError("t_grid must be nonempty")
    centers = bin_centers(j.n_bins)
    worst = 0.0
    for t1, t2 in t_grid:
        phase = t1 * centers[:, None] + t2 * centers[None, :]
        re_j = float((j.weights * np.cos(phase)).sum())
        im_j = float((j.weights * np.sin(phase)).sum())
        re_m = float((mu.weights * np.cos((t1 + t2) * centers)).sum())
        im_m = float((mu.weights * np.sin((t1 + t2) * centers)).sum())
        worst = max(worst, math.hypot(re_j - re_m, im_j - im_m))
    return worst


def char_gap_quadrature_bound(t_grid, n_bins: int) -> float:
    """Crude bound on the center-quadrature error of the gap."""
    return 2.0 * max(abs(t1) + abs(t2) for t1, t2 in t_grid) * (2.0 / n_bins)
