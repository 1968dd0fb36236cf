"""Exception hierarchy shared by the numerical modules."""


class FreudError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FreudError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(FreudError, ArithmeticError):
    """A series or iteration failed to converge within its budget."""

    def __init__(self, message, last_term=None):
        super().__init__(message)
        self.last_term = last_term


class SeriesDivergenceError(ConvergenceError):
    """A truncated series was evaluated outside its convergence region."""


class PrecisionLossError(FreudError, ArithmeticError):
    """Working precision was exhausted (positivity loss, unstable division)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PoleError(FreudError, ZeroDivisionError):
    """Evaluation at (or numerically on top of) a pole of a rational coefficient."""


class StructureViolation(FreudError, ArithmeticError):
    """A structural property expected of the computed objects does not hold."""


class SingularityError(FreudError, ArithmeticError):
    """An ODE right-hand side became singular along an integration path."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class CancellationWarning(RuntimeWarning):
    """A finite-difference step is small enough for rounding to dominate."""
