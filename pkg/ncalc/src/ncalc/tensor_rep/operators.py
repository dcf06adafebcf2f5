"""Tensor operators: linear maps written as sums of a x b, optionally after a generator."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ncalc.algebra.structure import Algebra, AlgebraElement, mul
from ncalc.errors import AlgebraMismatch, UnsupportedForNonassociative

logger = logging.getLogger(__name__)

DELTA = "delta"
LEFT_FIRST = "left_first"
RIGHT_FIRST = "right_first"
CONVENTIONS = (LEFT_FIRST, RIGHT_FIRST)


@dataclass(frozen=True)
class TensorTerm:
    """One summand left ⊗ right acting on gen(x)."""

    left: AlgebraElement
    right: AlgebraElement
    generator: str = DELTA


@dataclass(frozen=True)
class TensorOperator:
    """Finite sum of tensor terms acting on elements of ``source``.

    The identity map is the generator ``delta``; any other generator must be
    registered on the algebra as a linear map.
    """

    source: Algebra
    target: Algebra
    terms: Tuple[TensorTerm, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.source is not self.target:
            raise AlgebraMismatch(
                f"Tensor operators act within one algebra; got source '{self.source.name}' "
                f"and target '{self.target.name}'."
            )
        for term in self.terms:
            if term.left.algebra is not self.target or term.right.algebra is not self.target:
                raise AlgebraMismatch(f"Tensor term factors must belong to '{self.target.name}'.")
            if term.generator != DELTA and term.generator not in self.source.generators:
                raise KeyError(
                    f"Generator '{term.generator}' is not registered on '{self.source.name}'. "
                    f"Registered: {sorted(self.source.generators)}"
                )

    @property
    def algebra(self) -> Algebra:
        return self.target

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        if not isinstance(other, TensorOperator):
            return NotImplemented
        if other.target is not self.target:
            raise AlgebraMismatch("Cannot add tensor operators over different algebras.")
        return TensorOperator(self.source, self.target, self.terms + other.terms)

    def scale(self, factor) -> "TensorOperator":
        return TensorOperator(
            self.source,
            self.target,
            tuple(TensorTerm(term.left.scale(factor), term.right, term.generator) for term in self.terms),
        )

    def __call__(self, x: AlgebraElement, convention: str = LEFT_FIRST) -> AlgebraElement:
        return apply(self, x, convention)


def tensor(a: AlgebraElement, b: AlgebraElement, generator: str = DELTA) -> TensorOperator:
    """The single-term operator x -> (a gen(x)) b."""

    if a.algebra is not b.algebra:
        raise AlgebraMismatch(f"Tensor factors belong to '{a.algebra.name}' and '{b.algebra.name}'.")
    return TensorOperator(a.algebra, a.algebra, (TensorTerm(a, b, generator),))


def identity_operator(algebra: Algebra) -> TensorOperator:
    one = algebra.one()
    return tensor(one, one)


def left_shift(a: AlgebraElement) -> TensorOperator:
    """a ⊗ 1, the map x -> a x."""

    return tensor(a, a.algebra.one())


def right_shift(a: AlgebraElement) -> TensorOperator:
    """1 ⊗ a, the map x -> x a."""

    return tensor(a.algebra.one(), a)


def generator_matrix(algebra: Algebra, name: str) -> np.ndarray:
    if name == DELTA:
        return np.array(
            [[1 if k == m else 0 for m in range(algebra.dim)] for k in range(algebra.dim)], dtype=object
        )
    try:
        return algebra.generators[name]
    except KeyError as exc:
        raise KeyError(f"Generator '{name}' is not registered on '{algebra.name}'.") from exc


def apply_generator(name: str, x: AlgebraElement) -> AlgebraElement:
    if name == DELTA:
        return x
    matrix = generator_matrix(x.algebra, name)
    if not x.is_exact:
        matrix = matrix.astype(float)
    return AlgebraElement(x.algebra, matrix.dot(x.coords))


def apply(t: TensorOperator, x: AlgebraElement, convention: str = LEFT_FIRST) -> AlgebraElement:
    """Sum over terms of (left gen(x)) right, or left (gen(x) right) with ``right_first``."""

    if convention not in CONVENTIONS:
        raise ValueError(f"Unknown application convention '{convention}'. Expected one of {CONVENTIONS}.")
    if x.algebra is not t.source:
        raise AlgebraMismatch(f"Operator acts on '{t.source.name}', got an element of '{x.algebra.name}'.")
    result: Optional[AlgebraElement] = None
    for term in t.terms:
        moved = apply_generator(term.generator, x)
        if convention == LEFT_FIRST:
            value = mul(mul(term.left, moved), term.right)
        else:
            value = mul(term.left, mul(moved, term.right))
        result = value if result is None else result + value
    if result is None:
        return t.target.zero(exact=x.is_exact)
    return result


def tensor_mul(t1: TensorOperator, t2: TensorOperator) -> TensorOperator:
    """Composition t1 ∘ t2 term by term: (a⊗b)∘(c⊗d) = (ac)⊗(db)."""

    if t1.target is not t2.target:
        raise AlgebraMismatch("Cannot compose tensor operators over different algebras.")
    if not t1.target.flags.associative:
        raise UnsupportedForNonassociative(
            f"Composition of tensors needs an associative algebra; '{t1.target.name}' is not."
        )
    if any(term.generator != DELTA for term in t1.terms + t2.terms):
        raise ValueError("Composition is only defined for tensors on the identity generator.")
    terms = [
        TensorTerm(mul(first.left, second.left), mul(second.right, first.right))
        for first in t1.terms
        for second in t2.terms
    ]
    return TensorOperator(t1.source, t1.target, tuple(terms))

