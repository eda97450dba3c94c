"""Exception types raised across the package."""


class SecZetaError(Exception):
    """Base class for all package errors."""


class ZeroTableError(SecZetaError, ValueError):
    """A zero table failed to parse or validate."""

    def __init__(self, message, *, line=None, indices=None):
        super().__init__(message)
        self.line = line
        self.indices = indices


class CutoffError(SecZetaError, ValueError):
    """A cutoff height T is unusable for the given table."""


class GenerationError(SecZetaError, RuntimeError):
    """Zero generation could not certify a complete, accurate table."""


class ConvergenceError(SecZetaError, RuntimeError):
    """An iterative solver failed to converge."""


class LaurentDomainError(SecZetaError, ValueError):
    """Laurent evaluation requested outside 0 < |s - 1| < 2 or past the data."""
