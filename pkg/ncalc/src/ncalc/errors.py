"""Exception hierarchy shared by every ncalc module."""
from __future__ import annotations

from typing import Any, Optional, Sequence


class NcalcError(Exception):
    """Base class for all errors raised by ncalc."""


class AlgebraMismatch(NcalcError, ValueError):
    """Operands belong to different algebras."""


class NotInvertible(NcalcError, ArithmeticError):
    """An element (or the value of a subexpression) has no two-sided inverse."""

    def __init__(self, message: str, expression: Optional[Any] = None) -> None:
        super().__init__(message)
        self.expression = expression


class FlagContradiction(NcalcError, ValueError):
    """A declared algebra flag does not hold for the structural constants."""

    def __init__(self, flag: str, witness: Optional[Sequence[int]], message: str) -> None:
        super().__init__(message)
        self.flag = flag
        self.witness = tuple(witness) if witness is not None else None


class MalformedSpec(NcalcError, ValueError):
    """An input document (algebra or differential spec) is invalid."""


class UnsupportedForNonassociative(NcalcError, TypeError):
    """The operation needs an associative target algebra."""


class NoRepresentation(NcalcError, ValueError):
    """A linear map lies outside the span of the registered generators."""


class InexactScalarPath(NcalcError, TypeError):
    """An exact-only operation received floating coordinates."""


class NotPolynomial(NcalcError, ValueError):
    """An operation restricted to polynomial expressions met an inverse node."""


class ArityMismatch(NcalcError, ValueError):
    """Wrong number of direction arguments for a multilinear form."""


class InsufficientTruncation(NcalcError, ValueError):
    """The series truncation order cannot meet the requested tolerance."""


class IntegrationInconsistency(NcalcError, ArithmeticError):
    """A reconstructed solution failed verification after all symmetry checks passed."""


class ExpressionSyntaxError(NcalcError, ValueError):
    """Expression text could not be parsed."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationFailure(NcalcError, ArithmeticError):
    """A numeric map could not be evaluated at a requested point."""
