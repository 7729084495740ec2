"""Exception types shared across the package."""


class SynclabError(Exception):
    """Base class for all synclab errors."""


class DomainError(SynclabError, ValueError):
    """An argument lies outside its mathematical domain."""


class ShapeError(SynclabError, ValueError):
    """Operands live on mismatched partitions or grids."""


class UnsupportedError(SynclabError, ValueError):
    """Requested provider or mode does not apply to the given parameters."""


class ConvergenceError(SynclabError, RuntimeError):
    """Iteration did not reach tolerance within its budget.

    Carries the last iterate so callers can inspect or resume.
    """

    def __init__(self, message, last_iterate=None, last_change=None, iterations=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.last_change = last_change
        self.iterations = iterations


class AssemblyError(SynclabError, RuntimeError):
    """Operator row normalization failed beyond tolerance."""


class InsufficientVisitsError(SynclabError, RuntimeError):
    """A conditioning bin was visited too rarely to estimate from."""

    def __init__(self, message, visits):
        super().__init__(message)
        self.visits = visits


class RateFitError(SynclabError, RuntimeError):
    """The fit window for the geometric rate is empty.

    ``reason`` is ``"too-fast"`` when the distance skipped below the window
    and ``"too-slow"`` when it never entered it.
    """

    def __init__(self, message, reason, distances=None):
        super().__init__(message)
        self.reason = reason
        self.distances = distances


class EnvelopeError(SynclabError, RuntimeError):
    """The constant lower envelope of the density is degenerate."""


class OutOfRegimeError(SynclabError, RuntimeError):
    """The coupling exceeds the threshold below which the certificate applies."""

    def __init__(self, message, k_star):
        super().__init__(message)
        self.k_star = k_star


class ConfigError(SynclabError, ValueError):
    """Invalid, unknown, or out-of-range experiment configuration entry."""
