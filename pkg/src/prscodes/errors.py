"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CodingError(Exception):
    """Base class for all errors raised by :mod:`prscodes`."""


# -- fields -----------------------------------------------------------------
class UnsupportedField(CodingError, ValueError):
    pass


class NotPrime(CodingError, ValueError):
    pass


class FieldMismatch(CodingError, ValueError):
    pass


class DivisionByZero(CodingError, ZeroDivisionError):
    pass


class NoSuchElement(CodingError, RuntimeError):
    pass


# -- exponent sets ----------------------------------------------------------
class InvalidN(CodingError, ValueError):
    pass


class IndexOutOfRange(CodingError, IndexError):
    pass


class ShapeError(CodingError, ValueError):
    """An exponent set does not have the shape an operation requires."""


class InvalidDelta(CodingError, ValueError):
    pass


# -- codes ------------------------------------------------------------------
class EmptyInput(CodingError, ValueError):
    pass


class Mismatch(CodingError, ValueError):
    """Two codes do not share field and length."""


class NotSquareOrder(CodingError, ValueError):
    pass


class OutOfRange(CodingError, IndexError):
    pass


class PNotDividesN(CodingError, ValueError):
    pass


class DegenerateCode(CodingError, ValueError):
    pass


class BudgetExceeded(CodingError, RuntimeError):
    pass


# -- quantum ----------------------------------------------------------------
class HypothesisFailed(CodingError):
    """A construction's hypothesis was checked and does not hold."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class RuleViolated(CodingError, ValueError):
    pass
