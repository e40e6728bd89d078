"""Exception hierarchy shared by the evaluation engine and the CLI."""


class QPfaffError(Exception):
    """Base class for all errors raised by this package."""


class UnboundSymbol(QPfaffError, KeyError):
    def __init__(self, name, where=""):
        super().__init__(name)
        self.name = name
        self.where = where

    def __str__(self):
        if self.where:
            return f"{self.where}: symbol {self.name!r} is not declared"
        return f"symbol {self.name!r} has no assigned value"


class InadmissiblePoint(QPfaffError, ValueError):
    """A point assigns zero to a symbol, or a degenerate value to the base."""


class ShiftInadmissible(InadmissiblePoint):
    pass


class DivisionByZero(QPfaffError, ZeroDivisionError):
    def __init__(self, subtree):
        super().__init__(f"denominator vanishes: {subtree}")
        self.subtree = subtree


class NegativePochLength(QPfaffError, ValueError):
    pass


class PoleError(QPfaffError, ZeroDivisionError):
    def __init__(self, message, j=None, factor=None):
        super().__init__(message)
        self.j = j
        self.factor = factor


class NotTerminating(QPfaffError, ValueError):
    pass


class UnknownIdentity(QPfaffError, KeyError):
    def __str__(self):
        return f"unknown identity or recurrence: {self.args[0]!r}"


class UnsolvableConstraint(QPfaffError, ValueError):
    pass


class SamplingExhausted(QPfaffError, RuntimeError):
    pass


class SpecFileError(QPfaffError, ValueError):
    """Schema violation in a user-supplied identity file.

    ``where`` is a dotted field path such as ``lhs.num[2].exponents``.
    """

    def __init__(self, message, where=""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


# ZeroDivisionError subclasses cover DivisionByZero and PoleError, which is what
# screening needs to catch.
EVALUATION_ERRORS = (ZeroDivisionError, NegativePochLength, InadmissiblePoint, NotTerminating)
