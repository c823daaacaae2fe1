"""Exception types raised across the package."""


class OscillatorError(ValueError):
    """Base class for all domain errors raised by ptosc."""


class DegreeLimitError(OscillatorError):
    pass


class DomainError(OscillatorError):
    pass


class IncompatibleStatesError(OscillatorError):
    pass


class ExactnessError(OscillatorError):
    """Quadrature rule too small to integrate the requested product exactly."""


class ResolutionError(OscillatorError):
    pass


class RuleGenerationError(RuntimeError):
    """Newton iteration for Gauss-Hermite nodes failed to converge."""


class TruncationError(OscillatorError):
    """Series cutoff leaves more probability mass in the tail than allowed."""
