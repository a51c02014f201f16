"""Exception hierarchy.

Every error raised by the library derives from :class:`HahnError` so the
suite runner can catch library failures without swallowing genuine bugs
(``TypeError`` and friends still propagate).
"""


class HahnError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(HahnError, ZeroDivisionError):
    pass


class ZeroBottomPochhammer(HahnError, ZeroDivisionError):
    pass


class RepeatedPole(HahnError):
    pass


class IrrationalPole(HahnError):
    """A root of the denominator is not among the supplied candidate poles."""


class NotProper(HahnError):
    """Numerator degree exceeds denominator degree."""


class InvalidParams(HahnError):
    pass


class InvalidIndex(HahnError, IndexError):
    pass


class CoefficientPoleOnGrid(HahnError, ZeroDivisionError):
    pass


class PoleOnGrid(HahnError, ZeroDivisionError):
    pass


class DegenerateDenominator(HahnError, ZeroDivisionError):
    pass


class SingularBasisMatrix(HahnError):
    pass


class DimensionMismatch(HahnError, ValueError):
    pass


class SpanViolation(HahnError):
    def __init__(self, n, pole, message=None):
        self.n = n
        self.pole = pole
        super().__init__(message or f"stray pole {pole} at n={n}")


class UnknownSelector(HahnError, KeyError):
    pass
