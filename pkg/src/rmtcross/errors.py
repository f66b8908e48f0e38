"""Exception hierarchy shared across the package."""


class RmtCrossError(Exception):
    """Base class for all package errors."""


class DomainError(RmtCrossError, ValueError):
    """Argument or parameter outside the supported domain."""


class DimensionError(DomainError):
    """Matrix/vector shape violates the contract."""


class ParityError(DomainError):
    """Even/odd dimension requirement violated."""


class SizeLimitError(DomainError):
    """Input exceeds a documented size cap."""


class RangeError(RmtCrossError, OverflowError):
    """Result would overflow the supported floating-point range."""


class StepError(DomainError):
    """Finite-difference step invalid this close to a parameter boundary."""


class ConvergenceError(RmtCrossError, RuntimeError):
    """Adaptive quadrature ran out of depth.

    Carries the best available estimate and its error bound so callers can
    decide whether the partial answer is still usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
