"""Exception hierarchy shared by every module of the package."""


class DualSurfError(Exception):
    """Base class for all package errors."""


class UnboundParameter(DualSurfError, KeyError):
    pass


class DivisionByZero(DualSurfError, ZeroDivisionError):
    """A pole was hit while evaluating an expression."""

    def __init__(self, message, subexpr=None):
        super().__init__(message)
        self.subexpr = subexpr


class ParseError(DualSurfError, ValueError):
    pass


class DegenerateGaussMap(DualSurfError):
    pass


class IsotropyBroken(DualSurfError):
    pass


class DegenerateMoebius(DualSurfError):
    pass


class SingularChange(DualSurfError):
    pass


class DegenerateMetric(DualSurfError):
    pass


class InvalidParameter(DualSurfError, ValueError):
    pass


class SignatureMismatch(DualSurfError):
    pass


class PathThroughPuncture(DualSurfError):
    pass


class ToleranceNotMet(DualSurfError):
    pass


class NotIsolatedPole(DualSurfError):
    pass


class DegenerateFirstForm(DualSurfError):
    pass


class UnknownName(DualSurfError, KeyError):
    pass


class ParameterOutOfRange(DualSurfError, ValueError):
    pass


class GridMismatch(DualSurfError):
    pass
