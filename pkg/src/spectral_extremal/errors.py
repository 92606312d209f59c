"""Exception types shared across the package."""


class SpectralExtremalError(Exception):
    """Base class for all package errors."""


class InputError(SpectralExtremalError, ValueError):
    """Malformed arguments: out-of-range vertices, invalid moves, bad parameters."""


class DomainError(SpectralExtremalError, ValueError):
    """Operation undefined on this input, e.g. diameter of a disconnected graph."""


class CapabilityError(SpectralExtremalError):
    """Input is valid but outside what this implementation supports."""


class ConvergenceError(SpectralExtremalError):
    """Iterative solver did not converge. ``best`` holds the last estimate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ConsistencyError(SpectralExtremalError):
    """Internal tables or derived objects disagree with each other."""
