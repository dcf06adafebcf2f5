"""Taylor polynomials and truncated Taylor series of expressions around a point."""
from __future__ import annotations

import logging
import math
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ncalc.algebra.structure import Algebra, AlgebraElement, inverse, mul
from ncalc.errors import InexactScalarPath, NotPolynomial

from .expression import Const, NcExpression, Prod, Sum, Var, algebra_of, degree, evaluate
from .forms import Constant, DirectionSlot, MultilinearForm, VarSlot, derivative

logger = logging.getLogger(__name__)


def _fold_word_constants(word, x0: AlgebraElement, inverses: Dict) -> Optional[Tuple[Constant, ...]]:
    """Constants between the direction slots once x and inverse slots are evaluated at x0."""

    def combine(left: Constant, right: Constant) -> Constant:
        if left is None:
            return right
        if right is None:
            return left
        return mul(left, right)

    segments: List[Constant] = []
    current = word.constants[0]
    for position, slot in enumerate(word.slots):
        following = word.constants[position + 1]
        if isinstance(slot, DirectionSlot):
            segments.append(current)
            current = following
            continue
        if isinstance(slot, VarSlot):
            value = x0
        else:
            if slot.expression not in inverses:
                inverses[slot.expression] = inverse(evaluate(slot.expression, x0))
            value = inverses[slot.expression]
        current = combine(combine(current, value), following)
    segments.append(current)
    if any(segment is not None and segment.is_zero() for segment in segments):
        return None
    return tuple(segments)


def _shift(x0: AlgebraElement) -> NcExpression:
    variable = Var(x0.algebra)
    if x0.is_zero():
        return variable
    return Sum((variable, Const(-x0)))


def _layer_expression(form: MultilinearForm, x0: AlgebraElement, scale: Fraction) -> Optional[NcExpression]:
    """(scale) * form(x0)(x - x0, ..., x - x0) with identical words merged."""

    merged: "OrderedDict[Tuple[Constant, ...], Fraction]" = OrderedDict()
    inverses: Dict = {}
    for word in form.words:
        folded = _fold_word_constants(word, x0, inverses)
        if folded is None:
            continue
        merged[folded] = merged.get(folded, Fraction(0)) + word.prefactor * scale
    algebra = form.algebra
    shift = _shift(x0)
    terms: List[NcExpression] = []
    for constants, prefactor in merged.items():
        if prefactor == 0:
            continue
        first = constants[0] if constants[0] is not None else algebra.one()
        factors: List[NcExpression] = [Const(first.scale(prefactor))]
        for constant in constants[1:]:
            factors.append(shift)
            if constant is not None and constant != algebra.one():
                factors.append(Const(constant))
        factors = _drop_leading_unit(factors, algebra)
        terms.append(factors[0] if len(factors) == 1 else Prod(tuple(factors)))
    if not terms:
        return None
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _drop_leading_unit(factors: List[NcExpression], algebra: Algebra) -> List[NcExpression]:
    head = factors[0]
    if len(factors) > 1 and isinstance(head, Const) and head.value == algebra.one():
        return factors[1:]
    return factors


def taylor_from_forms(
    forms: Sequence[MultilinearForm], x0: AlgebraElement, base: Optional[AlgebraElement] = None
) -> NcExpression:
    """base + sum over m of (1/m!) forms[m-1](x0)(x - x0, ...); forms[m-1] has order m."""

    algebra = x0.algebra
    terms: List[NcExpression] = []
    if base is not None and not base.is_zero():
        terms.append(Const(base))
    for form in forms:
        layer = _layer_expression(form, x0, Fraction(1, math.factorial(form.order)))
        if layer is None:
            continue
        terms.extend(layer.terms if isinstance(layer, Sum) else (layer,))
    if not terms:
        return Const(algebra.zero())
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def taylor(p: NcExpression, x0: AlgebraElement) -> NcExpression:
    """Taylor polynomial of a polynomial p at x0; it equals p as a map."""

    top = degree(p)
    if top is None:
        raise NotPolynomial("taylor needs a polynomial; use taylor_series for expressions with inv(...).")
    if not x0.is_exact:
        raise InexactScalarPath("taylor divides by m! and needs an exact expansion point.")
    algebra = algebra_of(p) or x0.algebra
    forms = [derivative(p, m, algebra) for m in range(1, top + 1)]
    result = taylor_from_forms(forms, x0, evaluate(p, x0))
    logger.debug("Taylor polynomial of degree %d computed around %s", top, x0.format())
    return result


@dataclass(frozen=True)
class TruncatedSeries:
    """Layers of a power series by degree, truncated at ``order``, with an optional remainder bound."""

    algebra: Algebra
    order: int
    layers: Tuple[NcExpression, ...]
    remainder: Optional[Callable[[AlgebraElement], float]] = None

    def evaluate(self, x: AlgebraElement) -> AlgebraElement:
        total = self.algebra.zero(exact=x.is_exact)
        for layer in self.layers:
            total = total + evaluate(layer, x)
        return total

    def remainder_bound(self, x: AlgebraElement) -> Optional[float]:
        return None if self.remainder is None else float(self.remainder(x))

    def as_expression(self) -> NcExpression:
        return Sum(self.layers)


def taylor_series(p: NcExpression, x0: AlgebraElement, order: int) -> TruncatedSeries:
    """Layers (1/m!) ∂^m p(x0)(x - x0, ...) for m = 0..order; inverse nodes are evaluated at x0."""

    if order < 0:
        raise ValueError(f"Truncation order must be nonnegative, got {order}.")
    if not x0.is_exact:
        raise InexactScalarPath("taylor_series needs an exact expansion point.")
    algebra = algebra_of(p) or x0.algebra
    layers: List[NcExpression] = [Const(evaluate(p, x0))]
    for m in range(1, order + 1):
        layer = _layer_expression(derivative(p, m, algebra), x0, Fraction(1, math.factorial(m)))
        layers.append(layer if layer is not None else Const(algebra.zero()))
    top = degree(p)
    remainder = (lambda x: 0.0) if top is not None and top <= order else None
    return TruncatedSeries(algebra, order, tuple(layers), remainder)
