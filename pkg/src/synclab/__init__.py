"""Numerical laboratory for master-slave coupled quadratic maps.

Simulates the deterministic coupled system and its noise-driven counterpart,
discretizes the slave's Markov operator, certifies geometric ergodicity
through drift and minorization bounds, estimates generalized-dimension
spectra, and probes the weak limits of the joint invariant measure at both
coupling extremes.
"""

from .config import TOOL_VERSION as __version__
from .dimension import (DimensionSpectrum, ball_counts, default_r_grid,
                        delta_dq, dq_estimate)
from .dynamics import (ChainPath, CoupledOrbit, LyapunovEstimate,
                       conditional_slave, empirical_counts,
                       empirical_measures, simulate_chain, simulate_coupled,
                       sync_error, transverse_lyapunov,
                       transverse_lyapunov_trace)
from .errors import (AssemblyError, ConfigError, ConvergenceError,
                     DomainError, EnvelopeError, InsufficientVisitsError,
                     OutOfRegimeError, RateFitError, ShapeError, SynclabError,
                     UnsupportedError)
from .maps import (DensityOnI, QuadraticMap, bin_centers, bin_edges,
                   bin_index, eval_map, invariant_density, orbit, ulam_matrix)
from .measures import (DEFAULT_T_GRID, Hist2D, char_function_gap,
                       char_gap_quadrature_bound, diagonal_pushforward,
                       hist2d_l1, l1_distance, mean_abs_diff, product_measure,
                       tv_distance, w1_distance)
from .operator import (DriftCertificate, DriftMCReport, Envelope, KStarResult,
                       MinorizationCertificate, RateFit, UlamOperator,
                       build_ulam, density_hash, doeblin_k_threshold,
                       drift_certificate, drift_constants, drift_gamma,
                       drift_K, drift_mc_check, empirical_rate,
                       explicit_rate_membership, harris_rate_bound,
                       iterated_drift_bound, kernel_bin_masses,
                       kernel_density, lyapunov_V, max_rectangle_envelope,
                       minorization_certificate, stationary_density,
                       sublevel_radius, weighted_tv)

__all__ = [name for name in dir() if not name.startswith("_")]
