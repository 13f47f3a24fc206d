"""Exception types shared across the package."""


class GpueError(Exception):
    """Base class for errors raised by this package."""


class ConvergenceError(GpueError):
    """An iterative numerical routine exhausted its budget.

    Carries the best available estimate in ``result`` (a QuadratureResult
    for the integrator) so callers can still inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ConsistencyError(GpueError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class StatisticsError(GpueError):
    """A Monte Carlo run produced no usable samples."""
