"""Exception hierarchy shared by all evaluators."""


class NaiveIntegralError(Exception):
    """Base class for errors raised by this package."""


class DomainError(NaiveIntegralError, ValueError):
    """An argument lies outside the region where an evaluator is defined."""


class SeriesStructureError(NaiveIntegralError, ValueError):
    """A series lacks the leading structure an operation requires."""


class ClassificationError(NaiveIntegralError):
    """Saddle roots could not be matched unambiguously to their labels."""


class ConvergenceError(NaiveIntegralError):
    """An internal iteration (Newton, series Newton) failed to converge."""


class AccuracyError(NaiveIntegralError):
    """A quadrature did not reach its tolerance.

    The best available estimate is kept on the exception so callers can
    still report it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
