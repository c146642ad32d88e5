"""Exception hierarchy.

Validation-type failures (bad input, violated preconditions) derive from
:class:`ValidationError`; numerical failures (quadrature that did not
converge, truncations too short for the requested tolerance) derive from
:class:`NumericalError`.  The CLI maps the first family to exit code 2 and the
second to exit code 1.
"""


class ZetaworkError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ZetaworkError, ValueError):
    """Input rejected before any computation took place."""


class DomainError(ValidationError):
    """Argument outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class IntegerOverflowError(ValidationError, OverflowError):
    """Exact integer arithmetic left the signed 64-bit range."""


class ParseError(ValidationError):
    """Malformed input file.  ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DataValidationError(ValidationError):
    """Parsed data violated a consistency check; ``failures`` lists them."""

    def __init__(self, failures: list[str]):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class NumericalError(ZetaworkError, ArithmeticError):
    """A numerical procedure could not meet its accuracy contract."""


class ConvergenceError(NumericalError):
    """Adaptive refinement hit its depth limit before reaching tolerance."""

    def __init__(self, message: str, estimate=None, error: float | None = None):
        self.estimate = estimate
        self.error = error
        super().__init__(message)


class TruncationError(NumericalError):
    """A truncated series or sum has a tail estimate above tolerance."""

    def __init__(self, message: str, tail: float | None = None):
        self.tail = tail
        super().__init__(message)


class StepTooLargeError(NumericalError):
    """Finite-difference Richardson check disagreed beyond tolerance."""


class RangeWarning(UserWarning):
    """Evaluation outside the range in which accuracy has been validated."""
