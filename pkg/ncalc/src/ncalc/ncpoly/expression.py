"""Expression trees in one noncommuting variable."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from ncalc.algebra.structure import Algebra, AlgebraElement, inverse, mul
from ncalc.errors import NotInvertible
from ncalc.utils.sampling import random_rational_element

logger = logging.getLogger(__name__)


class NcExpression:
    """Base class for expression nodes; nodes are immutable and hashable."""

    def __add__(self, other: "NcExpression") -> "NcExpression":
        if not isinstance(other, NcExpression):
            return NotImplemented
        return Sum((self, other))

    def __sub__(self, other: "NcExpression") -> "NcExpression":
        if not isinstance(other, NcExpression):
            return NotImplemented
        return Sum((self, -other))

    def __neg__(self) -> "NcExpression":
        algebra = algebra_of(self)
        if algebra is None:
            raise ValueError("Cannot negate an expression without constants; use scaled(expr, -1, algebra).")
        return scaled(self, -1, algebra)

    def __mul__(self, other: "NcExpression") -> "NcExpression":
        if not isinstance(other, NcExpression):
            return NotImplemented
        return Prod((self, other))

    def __pow__(self, exponent: int) -> "NcExpression":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Only nonnegative integer powers are supported, got {exponent!r}.")
        return Prod(tuple([self] * exponent))

    def __str__(self) -> str:
        from .parser import format_expression

        return format_expression(self)


@dataclass(frozen=True)
class Const(NcExpression):
    value: AlgebraElement


@dataclass(frozen=True)
class Var(NcExpression):
    """The variable x; a parsed variable remembers its algebra, which takes no part in equality."""

    algebra: Optional[Algebra] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sum(NcExpression):
    terms: Tuple[NcExpression, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Prod(NcExpression):
    factors: Tuple[NcExpression, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class Inverse(NcExpression):
    child: NcExpression


X = Var()


def const(value: AlgebraElement) -> Const:
    return Const(value)


def scaled(p: NcExpression, factor, algebra: Algebra) -> NcExpression:
    return Prod((Const(algebra.one().scale(factor)), p))


def monomial(constants: Sequence[AlgebraElement]) -> NcExpression:
    """The word a0 x a1 x ... x an."""

    if not constants:
        raise ValueError("A monomial needs at least one constant.")
    factors = [Const(constants[0])]
    for constant in constants[1:]:
        factors.extend([X, Const(constant)])
    return Prod(tuple(factors))


def algebra_of(p: NcExpression) -> Optional[Algebra]:
    """Algebra of the first constant or bound variable in the tree, or None when nothing records one."""

    if isinstance(p, Const):
        return p.value.algebra
    if isinstance(p, Var):
        return p.algebra
    if isinstance(p, Sum):
        children: Sequence[NcExpression] = p.terms
    elif isinstance(p, Prod):
        children = p.factors
    elif isinstance(p, Inverse):
        children = (p.child,)
    else:
        return None
    for child in children:
        found = algebra_of(child)
        if found is not None:
            return found
    return None


def degree(p: NcExpression) -> Optional[int]:
    """Monomial degree bound in x; None when the tree contains an inverse."""

    if isinstance(p, Const):
        return 0
    if isinstance(p, Var):
        return 1
    if isinstance(p, Inverse):
        return None
    parts = [degree(child) for child in (p.terms if isinstance(p, Sum) else p.factors)]
    if any(part is None for part in parts):
        return None
    if isinstance(p, Sum):
        return max(parts, default=0)
    return sum(parts)


def is_polynomial(p: NcExpression) -> bool:
    return degree(p) is not None


def evaluate(p: NcExpression, x: AlgebraElement) -> AlgebraElement:
    """Evaluate with products folded from the left."""

    if isinstance(p, Const):
        return p.value
    if isinstance(p, Var):
        return x
    if isinstance(p, Sum):
        result = x.algebra.zero(exact=x.is_exact)
        for term in p.terms:
            result = result + evaluate(term, x)
        return result
    if isinstance(p, Prod):
        if not p.factors:
            return x.algebra.one()
        result = evaluate(p.factors[0], x)
        for factor in p.factors[1:]:
            result = mul(result, evaluate(factor, x))
        return result
    if isinstance(p, Inverse):
        value = evaluate(p.child, x)
        try:
            return inverse(value)
        except NotInvertible as exc:
            raise NotInvertible(f"Subexpression {p} has the noninvertible value {value.format()}.", p) from exc
    raise TypeError(f"Unknown expression node {type(p).__name__}.")


def substitute(g: NcExpression, f: NcExpression) -> NcExpression:
    """The composition g(f(x))."""

    if isinstance(g, Var):
        return f
    if isinstance(g, Const):
        return g
    if isinstance(g, Sum):
        return Sum(tuple(substitute(term, f) for term in g.terms))
    if isinstance(g, Prod):
        return Prod(tuple(substitute(factor, f) for factor in g.factors))
    if isinstance(g, Inverse):
        return Inverse(substitute(g.child, f))
    raise TypeError(f"Unknown expression node {type(g).__name__}.")


def random_monomial(
    algebra: Algebra, degree_: int, rng: np.random.Generator, bound: int = 3
) -> NcExpression:
    """a0 x a1 ... x an with small random rational constants."""

    return monomial([random_rational_element(algebra, rng, bound=bound) for _ in range(degree_ + 1)])


def random_polynomial(
    algebra: Algebra, max_degree: int, rng: np.random.Generator, terms: int = 3
) -> NcExpression:
    """Sum of random monomials whose degrees are drawn from 0..max_degree; the top degree is always present."""

    degrees = [max_degree] + [int(value) for value in rng.integers(0, max_degree + 1, size=terms - 1)]
    return Sum(tuple(random_monomial(algebra, d, rng) for d in degrees))


def scalar_constant(algebra: Algebra, value: Fraction | float | int) -> Const:
    return Const(algebra.one().scale(value))
