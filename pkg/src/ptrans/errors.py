"""Exception and warning types shared across the package."""


class PtransError(Exception):
    """Base class for all package errors."""


class DomainError(PtransError, ValueError):
    """An argument lies outside the domain where a function is defined."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. gamma at a nonpositive integer)."""


class EvalError(PtransError, ArithmeticError):
    """An integrand produced a NaN."""


class NonConvergenceError(PtransError, ArithmeticError):
    """A series, continued fraction or iteration exhausted its budget."""


class TailError(PtransError, ArithmeticError):
    """The tail of a semi-infinite integrand does not decay."""


class AccelerationFailure(PtransError, ArithmeticError):
    """Panel sums of an oscillatory integral do not behave like an alternating series."""


class StripViolation(DomainError):
    """Parameters fall outside the validity strip of an identity."""


class ConvergenceViolation(DomainError):
    """Decay metadata shows that the integrals of a relation do not converge absolutely."""


class NearSingularWarning(UserWarning):
    """A result was obtained by a limit procedure next to an excluded parameter value."""
