"""Exception hierarchy shared by every module."""


class AdpBoundsError(Exception):
    """Base class for all errors raised by this package."""


class EnumerationBudgetExceeded(AdpBoundsError):
    pass


class DomainTooSmall(AdpBoundsError, ValueError):
    pass


class ZeroDenominator(AdpBoundsError, ArithmeticError):
    pass


class InfiniteCurvature(AdpBoundsError, ArithmeticError):
    pass


class NonpositiveCurvature(AdpBoundsError, ValueError):
    pass


class StringTooLong(AdpBoundsError, ValueError):
    pass


class WrongTailLength(AdpBoundsError, ValueError):
    pass


class PolicyUndefined(AdpBoundsError, KeyError):
    pass


class ParseError(AdpBoundsError, ValueError):
    pass


class ValidationError(AdpBoundsError, ValueError):
    pass
