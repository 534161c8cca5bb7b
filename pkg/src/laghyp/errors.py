"""Exception types shared across the toolkit."""


class LaghypError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LaghypError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class ConvergenceError(LaghypError, RuntimeError):
    """An iterative evaluation failed to reach its tolerance within its budget."""


class TruncationError(LaghypError, RuntimeError):
    """A truncated integral would lose more mass than the contract allows."""


class GridRangeError(LaghypError, ValueError):
    """A requested evaluation leaves the grid while boundary values are not negligible."""


class StripViolationError(LaghypError, ValueError):
    """A spectral parameter lies outside the analyticity strip required by a check."""


class DivergenceError(LaghypError, RuntimeError):
    """A spectral tail that must decrease fails to do so."""


class PositivityError(LaghypError, RuntimeError):
    """A quantity that must be positive came out negative beyond the noise floor."""


class ConfigError(LaghypError, ValueError):
    """A run configuration is inconsistent or below the minimum resolution."""
