"""Markov kernel of the noise-driven slave and its stability certificates.

The kernel of ``y -> (1-k)*T2(y) + k*omega`` with omega distributed by the
density h is ``p_k(y, z) = h((z - (1-k)*T2(y))/k) / k`` on I. This module
discretizes the induced operator on densities as a row-stochastic matrix,
iterates it to the stationary density, fits the observed geometric rate, and
builds two certificates:

* a drift certificate for the Lyapunov function
  ``V(x) = cosh(c2^(1/k) * (1 - c2^2) * x / (1 - x^2))``, with contraction
  factor ``gamma = (1-k) * cosh(c2^(1/k + 1))`` and offset
  ``K = k * integral(h * V)``;
* a minorization certificate built from a constant lower envelope of h,
  yielding an explicit geometric rate bound in a weighted total variation
  metric.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (AssemblyError, ConvergenceError, DomainError,
                     EnvelopeError, OutOfRegimeError, RateFitError, ShapeError)
from .maps import DensityOnI, QuadraticMap, bin_edges

RATE_WINDOW = (1e-10, 1e-2)
DEFAULT_QUAD_TOL = 1e-6


# ---------------------------------------------------------------------------
# kernel and matrix discretization

def kernel_density(t2: QuadraticMap, h: DensityOnI, k: float, y: float, z: float) -> float:
    """Transition density p_k(y, z); zero when the rescaled argument leaves I."""
    if not 0.0 < k <= 1.0:
        raise DomainError(f"kernel coupling k must lie in (0, 1], got {k}")
    if abs(y) > 1.0 or abs(z) > 1.0:
        raise DomainError(f"kernel arguments outside [-1, 1]: y={y}, z={z}")
    x = (z - (1.0 - k) * t2(y)) / k
    if abs(x) > 1.0:
        return 0.0
    return float(h.value_at(x)) / k


def kernel_bin_masses(t2: QuadraticMap, h: DensityOnI, k: float,
                      ys: np.ndarray, n_bins: int) -> np.ndarray:
    """Exact per-bin masses of p_k(y, .) for each source point y.

    The push-forward of h through ``z = k*x + (1-k)*T2(y)`` is accumulated
    onto the n-bin partition by evaluating h's piecewise-linear CDF at the
    affinely pulled-back bin edges, so the only error is the binning itself.
    Rows sum to 1 up to rounding.
    """
    if not 0.0 < k <= 1.0:
        raise DomainError(f"kernel coupling k must lie in (0, 1], got {k}")
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    e = bin_edges(n_bins)
    shift = (1.0 - k) * t2(ys)
    args = (e[None, :] - shift[:, None]) / k
    cdf = np.interp(args, h.edges, h.cdf_knots())
    return np.diff(cdf, axis=1)


@dataclass(frozen=True, eq=False)
class UlamOperator:
    """Row-stochastic matrix acting on bin-mass vectors from the right.

    Entry (i, j) approximates the probability of stepping from the nodes of
    bin i into bin j. ``h_hash`` records the provenance of the noise density.
    """

    matrix: np.ndarray
    k: float
    c2: float
    h_hash: str

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError("operator matrix must be square")
        if np.any(m < 0.0):
            raise DomainError("operator entries must be nonnegative")
        rows = m.sum(axis=1)
        if np.any(np.abs(rows - 1.0) > 1e-10):
            raise DomainError("operator rows must be stochastic within 1e-10")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def n_bins(self) -> int:
        return self.matrix.shape[0]

    def apply(self, d: DensityOnI) -> DensityOnI:
        if d.n_bins != self.n_bins:
            raise ShapeError(f"density has {d.n_bins} bins, operator {self.n_bins}")
        v = d.weights @ self.matrix
        return DensityOnI(v / v.sum())


def density_hash(h: DensityOnI) -> str:
    return hashlib.sha256(h.weights.tobytes()).hexdigest()[:16]


def build_ulam(t2: QuadraticMap, h: DensityOnI, k: float, n_bins: int = 1024,
               samples_per_bin: int = 8, _chunk: int = 128) -> UlamOperator:
    """Assemble the operator matrix row by row.

    Each row averages the exact push-forward masses over ``samples_per_bin``
    equispaced nodes of the source bin. At k = 1 every row equals h's masses
    and the operator is rank one.
    """
    if not 0.0 < k <= 1.0:
        raise DomainError(f"coupling k must lie in (0, 1], got {k} "
                          "(k = 0 degenerates to a point kernel)")
    if n_bins < 16:
        raise DomainError(f"n_bins must be >= 16, got {n_bins}")
    if samples_per_bin < 1:
        raise DomainError(f"samples_per_bin must be >= 1, got {samples_per_bin}")
    w = 2.0 / n_bins
    offsets = (np.arange(samples_per_bin) + 0.5) * (w / samples_per_bin)
    rows = np.empty((n_bins, n_bins))
    for start in range(0, n_bins, _chunk):
        stop = min(start + _chunk, n_bins)
        lefts = -1.0 + w * np.arange(start, stop)
        nodes = (lefts[:, None] + offsets[None, :]).ravel()
        r = kernel_bin_masses(t2, h, k, nodes, n_bins)
        rows[start:stop] = r.reshape(stop - start, samples_per_bin, n_bins).mean(axis=1)
    sums = rows.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > 1e-8):
        worst = float(np.abs(sums - 1.0).max())
        raise AssemblyError(f"row normalization off by {worst:.3e} (> 1e-8)")
    rows /= sums[:, None]
    return UlamOperator(matrix=rows, k=float(k), c2=t2.c, h_hash=density_hash(h))


def stationary_density(op: UlamOperator, f0: DensityOnI,
                       max_iter: int = 100_000, tol: float = 1e-10):
    """Iterate f -> f*M until the L1 change drops below tol.

    Returns the fixed density and the number of steps used.
    """
    if f0.n_bins != op.n_bins:
        raise ShapeError(f"density has {f0.n_bins} bins, operator {op.n_bins}")
    v = f0.weights.copy()
    change = math.inf
    for it in range(1, max_iter + 1):
        v2 = v @ op.matrix
        v2 /= v2.sum()
        change = float(np.abs(v2 - v).sum())
        v = v2
        if change < tol:
            return DensityOnI(v), it
    raise ConvergenceError(
        f"power iteration: L1 change {change:.3e} > {tol:.1e} after {max_iter} steps",
        last_iterate=DensityOnI(v), last_change=change, iterations=max_iter)


@dataclass(frozen=True)
class RateFit:
    """Least-squares geometric rate of the L1 convergence trace."""

    rate: float
    slope: float
    intercept: float
    r2: float
    window_start: int
    window_stop: int
    distances: np.ndarray

    @property
    def n_window(self) -> int:
        return self.window_stop - self.window_start


def empirical_rate(op: UlamOperator, f0: DensityOnI, g: DensityOnI,
                   n_steps: int = 4000) -> RateFit:
    """Fit log L1(f_n - g) against n over the window where the distance lies
    in [1e-10, 1e-2]; the rate is exp(slope)."""
    if f0.n_bins != op.n_bins or g.n_bins != op.n_bins:
        raise ShapeError("density and operator partitions must match")
    lo, hi = RATE_WINDOW
    v = f0.weights.copy()
    gw = g.weights
    ds = []
    for _ in range(n_steps + 1):
        d = float(np.abs(v - gw).sum())
        ds.append(d)
        if d < lo / 10.0:
            break
        v = v @ op.matrix
        v /= v.sum()
    ds = np.asarray(ds)
    mask = (ds >= lo) & (ds <= hi)
    if mask.sum() < 2:
        if bool((ds < lo).any()):
            raise RateFitError("decay skipped the fit window (one-step collapse?)",
                               "too-fast", ds)
        raise RateFitError(f"distance never entered the fit window within {n_steps} steps",
                           "too-slow", ds)
    ns = np.nonzero(mask)[0]
    logs = np.log(ds[mask])
    slope, intercept = np.polyfit(ns, logs, 1)
    pred = slope * ns + intercept
    ssres = float(((logs - pred) ** 2).sum())
    sstot = float(((logs - logs.mean()) ** 2).sum())
    r2 = 1.0 if sstot < 1e-300 else 1.0 - ssres / sstot
    return RateFit(rate=float(math.exp(slope)), slope=float(slope),
                   intercept=float(intercept), r2=r2,
                   window_start=int(ns[0]), window_stop=int(ns[-1] + 1),
                   distances=ds)


# ---------------------------------------------------------------------------
# drift certificate

def _check_cert_params(c2: float, k: float):
    if not 0.0 < c2 < 1.0:
        raise DomainError(f"certificates require c2 in (0, 1), got {c2}")
    if not 0.0 < k < 1.0:
        raise DomainError(f"certificates require k in (0, 1), got {k}")


def lyapunov_V(c2: float, k: float, x):
    """The drift function cosh(c2^(1/k) * (1 - c2^2) * x / (1 - x^2)).

    Even, convex, equal to 1 at x = 0, divergent at the endpoints; callers
    must stay strictly inside I.
    """
    _check_cert_params(c2, k)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0 - 1e-12):
        raise DomainError("drift function evaluated too close to the endpoints")
    arg = c2 ** (1.0 / k) * (1.0 - c2 * c2) * x / (1.0 - x * x)
    out = np.cosh(arg)
    return float(out) if out.ndim == 0 else out


def drift_gamma(c2: float, k: float) -> float:
    """Contraction factor (1-k) * cosh(c2^(1/k + 1)); tends to 0 as k -> 1
    and to 1 as k -> 0."""
    _check_cert_params(c2, k)
    return (1.0 - k) * math.cosh(c2 ** (1.0 / k + 1.0))


def sublevel_radius(c2: float, k: float, R: float) -> float:
    """Radius y_R of the small set {V <= R} = [-y_R, y_R].

    Solves cosh(a * y/(1-y^2)) = R for y >= 0 with a = c2^(1/k)*(1-c2^2);
    returns 1 when R exceeds the drift function's range on (-1, 1).
    """
    _check_cert_params(c2, k)
    if R < 1.0:
        raise DomainError(f"the drift function is >= 1, got level {R}")
    a = c2 ** (1.0 / k) * (1.0 - c2 * c2)
    t = math.acosh(R) / a
    if t == 0.0:
        return 0.0
    return (-1.0 + math.sqrt(1.0 + 4.0 * t * t)) / (2.0 * t)


def _require_interior_support(h: DensityOnI):
    if h.weights[0] > 0.0 or h.weights[-1] > 0.0:
        raise DomainError("noise density carries mass on the boundary bins; "
                          "the drift integral needs support strictly inside I")


def drift_K(t2: QuadraticMap, h: DensityOnI, k: float) -> float:
    """Offset K = k * sum of h-mass times V at the bin centers.

    Finite only when h is supported strictly inside I, so boundary-bin mass
    is rejected; the two boundary bins are excluded from the sum.
    """
    _check_cert_params(t2.c, k)
    _require_interior_support(h)
    centers = h.centers[1:-1]
    return float(k * (h.weights[1:-1] * lyapunov_V(t2.c, k, centers)).sum())


def drift_constants(t2: QuadraticMap, h: DensityOnI, k: float):
    return drift_gamma(t2.c, k), drift_K(t2, h, k)


@dataclass(frozen=True, eq=False)
class DriftCertificate:
    """Gridded check of ``integral p_k(y, .) V <= gamma*V(y) + K``.

    ``residuals = lhs - rhs`` should be nonpositive up to quadrature noise;
    the certificate is valid when every residual stays below
    ``quad_tol * rhs``.
    """

    k: float
    c2: float
    gamma_k: float
    K_k: float
    y_grid: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    quad_tol: float

    @property
    def residuals(self) -> np.ndarray:
        return self.lhs - self.rhs

    @property
    def max_rel_residual(self) -> float:
        return float((self.residuals / self.rhs).max())

    @property
    def valid(self) -> bool:
        return bool(np.all(self.residuals <= self.quad_tol * self.rhs))


def drift_certificate(t2: QuadraticMap, h: DensityOnI, k: float,
                      y_grid: np.ndarray | None = None,
                      quad_tol: float = DEFAULT_QUAD_TOL) -> DriftCertificate:
    """Evaluate the drift inequality on a grid of source points.

    The left side pushes h through the kernel at each grid point and sums
    V over the image bins with the same interval-overlap quadrature used for
    the operator assembly.
    """
    gamma = drift_gamma(t2.c, k)
    K = drift_K(t2, h, k)
    if y_grid is None:
        y_grid = np.linspace(-0.999, 0.999, 200)
    y_grid = np.asarray(y_grid, dtype=float)
    if np.any(np.abs(y_grid) >= 1.0 - 1e-12):
        raise DomainError("drift grid points must lie strictly inside I")
    masses = kernel_bin_masses(t2, h, k, y_grid, h.n_bins)
    v_cent = lyapunov_V(t2.c, k, h.centers)
    lhs = masses @ v_cent
    rhs = gamma * lyapunov_V(t2.c, k, y_grid) + K
    return DriftCertificate(k=float(k), c2=t2.c, gamma_k=gamma, K_k=K,
                            y_grid=y_grid, lhs=lhs, rhs=rhs, quad_tol=quad_tol)


def iterated_drift_bound(gamma: float, K: float, v0: float, n) -> np.ndarray:
    """Closed-form bound K*(1 - gamma^(n+1))/(1 - gamma) + gamma^n * V(y0)."""
    n = np.asarray(n)
    return K * (1.0 - gamma ** (n + 1.0)) / (1.0 - gamma) + gamma ** n * v0


@dataclass(frozen=True, eq=False)
class DriftMCReport:
    """Monte Carlo check of the iterated drift bound."""

    k: float
    y0: float
    reps: int
    ns: np.ndarray
    means: np.ndarray
    ses: np.ndarray
    bounds: np.ndarray
    passed: bool
    max_excess: float


def drift_mc_check(t2: QuadraticMap, h: DensityOnI, k: float, y0: float,
                   n: int, reps: int, seed: int) -> DriftMCReport:
    """Compare the Monte Carlo mean of V along the chain with the iterated
    drift bound at every step up to n; passes when the mean never exceeds
    the bound by more than three standard errors."""
    _check_cert_params(t2.c, k)
    if reps < 10_000:
        raise DomainError(f"need at least 1e4 replicas, got {reps}")
    if abs(y0) >= 1.0 - 1e-12:
        raise DomainError("y0 must lie strictly inside I")
    gamma, K = drift_constants(t2, h, k)
    v0 = lyapunov_V(t2.c, k, y0)
    rng = np.random.Generator(np.random.PCG64(seed))
    ys = np.full(reps, float(y0))
    means = np.empty(n + 1)
    ses = np.empty(n + 1)
    for step in range(n + 1):
        vals = lyapunov_V(t2.c, k, ys)
        means[step] = vals.mean()
        ses[step] = vals.std(ddof=1) / math.sqrt(reps)
        if step < n:
            ys = (1.0 - k) * t2(ys) + k * h.sample(reps, rng)
    ns = np.arange(n + 1)
    bounds = iterated_drift_bound(gamma, K, v0, ns)
    excess = means - (bounds + 3.0 * ses)
    return DriftMCReport(k=float(k), y0=float(y0), reps=int(reps), ns=ns,
                         means=means, ses=ses, bounds=bounds,
                         passed=bool(np.all(excess <= 0.0)),
                         max_excess=float(excess.max()))


# ---------------------------------------------------------------------------
# minorization certificate

class Envelope(NamedTuple):
    c_env: float
    bin_lo: int
    bin_hi: int
    a0: float
    b0: float
    alpha: float


def max_rectangle_envelope(h: DensityOnI, margin: float) -> Envelope:
    """Largest constant-times-indicator lower bound of the histogram.

    Finds the contiguous bin range maximizing min-height times width (the
    maximal rectangle under the histogram), then shrinks the height by
    ``margin`` so the envelope sits strictly below the density.
    """
    if not 0.0 < margin < 1.0:
        raise DomainError(f"margin must lie in (0, 1), got {margin}")
    heights = h.density_values()
    best_area = 0.0
    best = None
    stack: list[tuple[int, float]] = []
    for i, hgt in enumerate(np.append(heights, 0.0)):
        start = i
        while stack and stack[-1][1] >= hgt:
            idx, ph = stack.pop()
            area = ph * (i - idx)
            if area > best_area:
                best_area = area
                best = (idx, i - 1, ph)
            start = idx
        stack.append((start, float(hgt)))
    if best is None:
        raise EnvelopeError("density has no positive bins")
    lo, hi, min_h = best
    c_env = (1.0 - margin) * min_h
    e = h.edges
    a0, b0 = float(e[lo]), float(e[hi + 1])
    alpha = c_env * (b0 - a0)
    if alpha < 1e-6:
        raise EnvelopeError(f"degenerate envelope: mass {alpha:.3e} < 1e-6")
    return Envelope(c_env=c_env, bin_lo=lo, bin_hi=hi, a0=a0, b0=b0, alpha=alpha)


class KStarResult(NamedTuple):
    branch: str
    raw: float
    k_star: float


def doeblin_k_threshold(a0: float, b0: float, c2: float) -> KStarResult:
    """Coupling threshold below which the envelope minorizes the kernel.

    Three branches depending on where the envelope support [a0, b0] sits
    relative to [-c2, c2]; branch values are lifted to at least 1 and then
    capped at 1, so with supports inside I the usable threshold is 1.
    """
    if b0 <= a0:
        raise DomainError(f"empty envelope support [{a0}, {b0}]")
    if a0 > c2:
        branch, raw = "a0>c2", (1.0 - c2) / (a0 - c2)
    elif b0 < -c2:
        branch, raw = "b0<-c2", (1.0 - c2) / abs(b0 + c2)
    else:
        branch, raw = "interior", 1.0
    value = max(raw, 1.0)
    return KStarResult(branch=branch, raw=float(raw), k_star=min(value, 1.0))


def harris_rate_bound(alpha_k: float, alpha_bar: float, R: float,
                      gamma: float, K: float) -> float:
    """Explicit geometric rate combining minorization mass and drift:
    max of 1 - (alpha_k - alpha_bar) and
    (2 + R*b*(gamma + 2K/R)) / (2 + R*b) with b = alpha_bar/K.

    Lies in (0, 1) whenever 0 < alpha_bar < alpha_k <= 1 and
    R > 2K/(1 - gamma).
    """
    if not 0.0 < alpha_bar < alpha_k <= 1.0:
        raise DomainError(f"need 0 < alpha_bar < alpha_k <= 1, got {alpha_bar}, {alpha_k}")
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"need gamma in [0, 1), got {gamma}")
    if K <= 0.0 or R <= 2.0 * K / (1.0 - gamma):
        raise DomainError(f"need R > 2K/(1-gamma) = {2.0 * K / (1.0 - gamma):.6g}, got {R}")
    b = alpha_bar / K
    first = 1.0 - (alpha_k - alpha_bar)
    second = (2.0 + R * b * (gamma + 2.0 * K / R)) / (2.0 + R * b)
    return max(first, second)


@dataclass(frozen=True, eq=False)
class MinorizationCertificate:
    """Envelope, small-set minorization diagnostic, and rate bound.

    ``psi0`` holds the envelope's per-bin masses (a subprobability);
    ``nu_tilde_masses`` is the per-bin pointwise infimum, over the shift
    grid, of the envelope push-forward (unnormalized; it can vanish at
    small couplings even though the certificate itself stands), and
    ``nu_tilde`` is its normalization when the total mass is positive.
    ``rate_bound_min`` is the numerical minimum of the bound over a grid of
    admissible (alpha_bar, R) pairs.
    """

    k: float
    c2: float
    psi0: np.ndarray
    a0: float
    b0: float
    alpha_k: float
    k_star: float
    k_star_branch: str
    k_star_raw: float
    gamma_k: float
    K_k: float
    R: float
    alpha_bar: float
    rate_bound: float
    nu_tilde_masses: np.ndarray
    nu_tilde: DensityOnI | None
    rate_bound_min: float
    alpha_bar_opt: float
    R_opt: float


def minorization_certificate(t2: QuadraticMap, h: DensityOnI, k: float,
                             margin: float = 0.05, alpha_bar_frac: float = 0.5,
                             R_frac: float = 2.0, w_points: int = 1024) -> MinorizationCertificate:
    """Build the minorization certificate for coupling k.

    ``margin`` shrinks the envelope below h, ``alpha_bar_frac`` places
    alpha_bar inside (0, alpha_k), and ``R_frac`` scales R above its lower
    bound 2K/(1-gamma). Raises OutOfRegimeError when k >= k_star.
    """
    _check_cert_params(t2.c, k)
    if not 0.0 < alpha_bar_frac < 1.0:
        raise DomainError(f"alpha_bar_frac must lie in (0, 1), got {alpha_bar_frac}")
    if R_frac <= 1.0:
        raise DomainError(f"R_frac must exceed 1, got {R_frac}")
    env = max_rectangle_envelope(h, margin)
    ks = doeblin_k_threshold(env.a0, env.b0, t2.c)
    if k >= ks.k_star:
        raise OutOfRegimeError(
            f"k = {k} is not below the certificate threshold k_star = {ks.k_star}",
            ks.k_star)
    gamma, K = drift_constants(t2, h, k)
    R_min = 2.0 * K / (1.0 - gamma)
    R = R_frac * R_min
    alpha_bar = alpha_bar_frac * env.alpha
    rate = harris_rate_bound(env.alpha, alpha_bar, R, gamma, K)

    # per-bin infimum of the envelope push-forward over the shift range
    wgrid = np.linspace(-t2.c, t2.c, w_points)
    args = (h.edges[None, :] - (1.0 - k) * wgrid[:, None]) / k
    psi_cdf = env.c_env * (np.clip(args, env.a0, env.b0) - env.a0)
    nu_masses = np.diff(psi_cdf, axis=1).min(axis=0)
    nu_masses[nu_masses < 0.0] = 0.0
    nu_total = float(nu_masses.sum())
    nu_norm = DensityOnI(nu_masses / nu_total) if nu_total > 1e-300 else None

    fracs = np.linspace(0.05, 0.95, 19)
    rfracs = np.geomspace(1.01, 1e4, 25)
    best = (rate, alpha_bar, R)
    for fa in fracs:
        for fr in rfracs:
            cand = harris_rate_bound(env.alpha, fa * env.alpha, fr * R_min, gamma, K)
            if cand < best[0]:
                best = (cand, fa * env.alpha, fr * R_min)

    psi0 = np.zeros(h.n_bins)
    psi0[env.bin_lo:env.bin_hi + 1] = env.c_env * h.bin_width
    return MinorizationCertificate(
        k=float(k), c2=t2.c, psi0=psi0, a0=env.a0, b0=env.b0,
        alpha_k=env.alpha, k_star=ks.k_star, k_star_branch=ks.branch,
        k_star_raw=ks.raw, gamma_k=gamma, K_k=K, R=R, alpha_bar=alpha_bar,
        rate_bound=rate, nu_tilde_masses=nu_masses, nu_tilde=nu_norm,
        rate_bound_min=best[0], alpha_bar_opt=best[1], R_opt=best[2])


# ---------------------------------------------------------------------------
# weighted total variation

def weighted_tv(a: DensityOnI, b: DensityOnI, c2: float, k: float, beta: float) -> float:
    """Weighted L1 distance sum((1 + beta*(V - 1)) * |da - db|) over the
    interior bins; inputs must vanish on the two boundary bins where V is
    not evaluated."""
    if a.n_bins != b.n_bins:
        raise ShapeError(f"mismatched partitions: {a.n_bins} vs {b.n_bins} bins")
    if beta <= 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    for name, d in (("first", 0), ("last", -1)):
        if a.weights[d] > 0.0 or b.weights[d] > 0.0:
            raise DomainError(f"inputs must vanish on the {name} bin")
    v = lyapunov_V(c2, k, a.centers[1:-1])
    diff = np.abs(a.weights[1:-1] - b.weights[1:-1])
    return float(((1.0 + beta * (v - 1.0)) * diff).sum())


def explicit_rate_membership(f0: DensityOnI, c2: float, k: float):
    """Whether the initial density admits the explicit rate (finite drift
    integral, i.e. no boundary-bin mass); returns the flag and the interior
    integral value."""
    member = bool(f0.weights[0] == 0.0 and f0.weights[-1] == 0.0)
    value = float((f0.weights[1:-1] * lyapunov_V(c2, k, f0.centers[1:-1])).sum())
    return member, value
