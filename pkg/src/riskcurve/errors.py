"""Exception types shared across the package."""


class RiskCurveError(Exception):
    """Base class for errors raised by this package."""


class DomainError(RiskCurveError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericalError(RiskCurveError, ArithmeticError):
    """A floating-point computation failed its own accuracy check."""


class SingularityError(RiskCurveError, ArithmeticError):
    """A recurrence's leading coefficient vanishes on the extension range."""

    def __init__(self, n: int):
        super().__init__(f"leading recurrence coefficient vanishes at n = {n}")
        self.n = n


class NotFoundError(RiskCurveError, LookupError):
    """A bounded search finished without finding an answer."""
