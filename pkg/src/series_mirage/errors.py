"""Exception types shared across the package."""


class SeriesMirageError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(SeriesMirageError, ValueError):
    """An argument violates a documented precondition."""


class EvaluationOverflowError(SeriesMirageError, OverflowError):
    """A numeric evaluation left the representable floating-point range."""


class UnsupportedEquationError(SeriesMirageError, ValueError):
    """The requested method does not handle this equation kind."""


class DivergenceError(SeriesMirageError, ArithmeticError):
    """A time-stepping run produced non-finite values."""
