"""Exception hierarchy shared by all modules."""


class CriterionError(Exception):
    """Base class for errors raised by this package."""


class DivisionByZero(CriterionError, ZeroDivisionError):
    pass


class DegreeMismatch(CriterionError, ValueError):
    pass


class DimensionMismatch(CriterionError, ValueError):
    pass


class ZeroDivisor(CriterionError, ZeroDivisionError):
    pass


class ZeroPolynomial(CriterionError, ValueError):
    pass


class CancellationViolation(CriterionError, ValueError):
    """The kernel has a nonzero spherical mean (degree-0 harmonic component)."""


class OddComponent(CriterionError, ValueError):
    """The kernel has an odd-degree harmonic component."""


class IndexOutOfRange(CriterionError, ValueError):
    pass


class SingularSystem(CriterionError, ArithmeticError):
    pass


class QuadratureUnderResolved(CriterionError, RuntimeError):
    pass


class InternalMismatch(CriterionError, AssertionError):
    """Two independent computations of the same exact quantity disagree."""
