"""Exception hierarchy shared across the package."""


class BetaArmaError(Exception):
    """Base class for all errors raised by betaarma."""


class DomainError(BetaArmaError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DataError(BetaArmaError, ValueError):
    """Input data violates the model contract (boundary values, date gaps, ...)."""


class ConvergenceError(BetaArmaError, RuntimeError):
    """An iterative numerical procedure stalled or diverged."""


class FilterError(BetaArmaError, RuntimeError):
    """Kalman recursion became numerically degenerate."""
