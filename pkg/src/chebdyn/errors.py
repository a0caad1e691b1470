"""Exception types shared across the package."""


class ChebdynError(Exception):
    """Base class for all library errors."""


class DomainError(ChebdynError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PreperiodicInputError(DomainError):
    """A preperiodic point was supplied where a wandering point is required."""


class CoincidentPointsError(DomainError):
    """Two points coincide where a positive distance is required."""


class PrecisionError(ChebdynError):
    """The requested accuracy could not be certified within the precision ceiling.

    ``best`` carries the best achieved value/bound so callers can degrade
    gracefully instead of losing the whole computation.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
