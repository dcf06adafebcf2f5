"""Multilinear forms built from interleaved words, and symbolic Gateaux derivatives."""
from __future__ import annotations

import itertools
import logging
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ncalc.algebra.structure import Algebra, AlgebraElement, inverse, mul
from ncalc.errors import ArityMismatch, NotInvertible, NotPolynomial

from .expression import Const, Inverse, NcExpression, Prod, Sum, Var, algebra_of, evaluate, substitute
from .parser import format_expression

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VarSlot:
    """The variable x."""


@dataclass(frozen=True)
class DirectionSlot:
    """Direction h_index, 1-based."""

    index: int


@dataclass(frozen=True)
class InverseSlot:
    """The value u(x)^-1 of an inverse subexpression."""

    expression: NcExpression


Slot = Union[VarSlot, DirectionSlot, InverseSlot]
XSLOT = VarSlot()

Constant = Optional[AlgebraElement]


def _merge(left: Constant, right: Constant) -> Constant:
    if left is None:
        return right
    if right is None:
        return left
    return _normalize_constant(mul(left, right))


def _normalize_constant(value: Constant) -> Constant:
    if value is None:
        return None
    algebra = value.algebra
    if algebra.flags.unital and value == algebra.one():
        return None
    return value


@dataclass(frozen=True)
class Word:
    """prefactor * c0 s1 c1 s2 ... sn cn; a constant of None stands for the unit."""

    prefactor: Fraction
    constants: Tuple[Constant, ...]
    slots: Tuple[Slot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefactor", Fraction(self.prefactor))
        object.__setattr__(self, "constants", tuple(_normalize_constant(c) for c in self.constants))
        object.__setattr__(self, "slots", tuple(self.slots))
        if len(self.constants) != len(self.slots) + 1:
            raise ValueError(f"A word with {len(self.slots)} slots needs {len(self.slots) + 1} constants.")

    @property
    def key(self) -> Tuple[Tuple[Constant, ...], Tuple[Slot, ...]]:
        return (self.constants, self.slots)

    @property
    def x_degree(self) -> int:
        return sum(1 for slot in self.slots if isinstance(slot, VarSlot))

    @property
    def directions(self) -> Tuple[int, ...]:
        return tuple(slot.index for slot in self.slots if isinstance(slot, DirectionSlot))

    @property
    def is_polynomial(self) -> bool:
        return not any(isinstance(slot, InverseSlot) for slot in self.slots)

    def has_zero_constant(self) -> bool:
        return any(c is not None and c.is_zero() for c in self.constants)

    def scaled(self, factor: Fraction | int) -> "Word":
        return Word(self.prefactor * factor, self.constants, self.slots)

    def prefix(self, position: int) -> "Word":
        """Everything before slot ``position`` with unit prefactor."""

        return Word(1, self.constants[: position + 1], self.slots[:position])

    def suffix(self, position: int) -> "Word":
        """Everything after slot ``position`` with unit prefactor."""

        return Word(1, self.constants[position + 1 :], self.slots[position + 1 :])

    def relabeled(self, mapping: Mapping[int, int]) -> "Word":
        slots = tuple(
            DirectionSlot(mapping.get(slot.index, slot.index)) if isinstance(slot, DirectionSlot) else slot
            for slot in self.slots
        )
        return Word(self.prefactor, self.constants, slots)


def concat(*words: Word) -> Word:
    """Product of words; adjacent constants are multiplied out."""

    prefactor = Fraction(1)
    constants: List[Constant] = [None]
    slots: List[Slot] = []
    for word in words:
        prefactor *= word.prefactor
        constants[-1] = _merge(constants[-1], word.constants[0])
        constants.extend(word.constants[1:])
        slots.extend(word.slots)
    return Word(prefactor, tuple(constants), tuple(slots))


def slot_word(slot: Slot) -> Word:
    return Word(1, (None, None), (slot,))


def constant_word(value: Constant, prefactor: Fraction | int = 1) -> Word:
    return Word(prefactor, (value,), ())


@dataclass(frozen=True)
class MultilinearForm:
    """Sum of words; linear in each direction slot h_1..h_order."""

    algebra: Algebra
    order: int
    words: Tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(self.words))
        expected = tuple(range(1, self.order + 1))
        for word in self.words:
            if tuple(sorted(word.directions)) != expected:
                raise ValueError(
                    f"Every word of an order-{self.order} form must use h1..h{self.order} once; "
                    f"got directions {word.directions}."
                )
            for constant in word.constants:
                if constant is not None and constant.algebra is not self.algebra:
                    raise ValueError(f"Word constant belongs to '{constant.algebra.name}', not '{self.algebra.name}'.")

    @property
    def is_polynomial(self) -> bool:
        return all(word.is_polynomial for word in self.words)

    @property
    def x_degree(self) -> int:
        return max((word.x_degree for word in self.words), default=0)

    def simplified(self) -> "MultilinearForm":
        """Merge identical words and drop vanishing ones; first-occurrence order is kept."""

        merged: "OrderedDict[Tuple, Fraction]" = OrderedDict()
        for word in self.words:
            if word.prefactor == 0 or word.has_zero_constant():
                continue
            merged[word.key] = merged.get(word.key, Fraction(0)) + word.prefactor
        words = tuple(
            Word(prefactor, constants, slots) for (constants, slots), prefactor in merged.items() if prefactor != 0
        )
        return MultilinearForm(self.algebra, self.order, words)

    def __add__(self, other: "MultilinearForm") -> "MultilinearForm":
        self._check_compatible(other)
        return MultilinearForm(self.algebra, self.order, self.words + other.words)

    def __sub__(self, other: "MultilinearForm") -> "MultilinearForm":
        self._check_compatible(other)
        return MultilinearForm(self.algebra, self.order, self.words + tuple(word.scaled(-1) for word in other.words))

    def scaled(self, factor: Fraction | int) -> "MultilinearForm":
        return MultilinearForm(self.algebra, self.order, tuple(word.scaled(factor) for word in self.words))

    def permuted(self, mapping: Mapping[int, int]) -> "MultilinearForm":
        """Rename direction slots by ``mapping``; a transposition swaps two arguments."""

        return MultilinearForm(self.algebra, self.order, tuple(word.relabeled(mapping) for word in self.words))

    def _check_compatible(self, other: "MultilinearForm") -> None:
        if other.algebra is not self.algebra or other.order != self.order:
            raise ValueError(
                f"Forms are incompatible: order {self.order} over '{self.algebra.name}' "
                f"and order {other.order} over '{other.algebra.name}'."
            )

    def format(self) -> str:
        """Render words such as ``h·x + x·h``; directions print as h1, h2 for order > 1."""

        if not self.words:
            return "0"
        rendered = []
        for word in self.words:
            tokens: List[str] = []
            for position, constant in enumerate(word.constants):
                if constant is not None:
                    text = constant.format()
                    tokens.append(f"({text})" if " " in text or text.startswith("-") else text)
                if position < len(word.slots):
                    tokens.append(self._slot_text(word.slots[position]))
            body = "·".join(tokens) if tokens else "1"
            prefactor = word.prefactor
            if prefactor == 1:
                rendered.append(body)
            elif prefactor == -1:
                rendered.append(f"-{body}")
            else:
                rendered.append(f"{prefactor}·{body}")
        return " + ".join(rendered).replace("+ -", "- ")

    def _slot_text(self, slot: Slot) -> str:
        if isinstance(slot, VarSlot):
            return "x"
        if isinstance(slot, DirectionSlot):
            return "h" if self.order == 1 else f"h{slot.index}"
        return f"inv({format_expression(slot.expression)})"

    def to_json(self) -> List[Dict[str, object]]:
        """Deterministic serialisation: one record per word."""

        records = []
        for word in self.words:
            records.append(
                {
                    "prefactor": str(word.prefactor),
                    "constants": [
                        None if constant is None else [str(value) for value in constant.coords]
                        for constant in word.constants
                    ],
                    "slots": [_slot_json(slot) for slot in word.slots],
                }
            )
        return records

    def __str__(self) -> str:
        return self.format()


def _slot_json(slot: Slot) -> str:
    if isinstance(slot, VarSlot):
        return "X"
    if isinstance(slot, DirectionSlot):
        return f"H{slot.index}"
    return f"inv({format_expression(slot.expression)})"


def zero_form(algebra: Algebra, order: int) -> MultilinearForm:
    return MultilinearForm(algebra, order, ())


def _require_unital(algebra: Algebra) -> None:
    if not algebra.flags.unital:
        raise ValueError(f"Expressions need a unital algebra; '{algebra.name}' is not unital.")


def _expression_words(p: NcExpression) -> List[Word]:
    if isinstance(p, Const):
        return [constant_word(p.value)]
    if isinstance(p, Var):
        return [slot_word(XSLOT)]
    if isinstance(p, Inverse):
        return [slot_word(InverseSlot(p.child))]
    if isinstance(p, Sum):
        return [word for term in p.terms for word in _expression_words(term)]
    if isinstance(p, Prod):
        words = [constant_word(None)]
        for factor in p.factors:
            factor_words = _expression_words(factor)
            words = [concat(left, right) for left in words for right in factor_words]
        return words
    raise TypeError(f"Unknown expression node {type(p).__name__}.")


def expand_form(p: NcExpression, algebra: Optional[Algebra] = None) -> MultilinearForm:
    """The order-0 form of an expression: a sum of words in x and inverse slots."""

    algebra = algebra or algebra_of(p)
    if algebra is None:
        raise ValueError(f"Cannot infer the algebra of '{format_expression(p)}'; pass it explicitly.")
    _require_unital(algebra)
    return MultilinearForm(algebra, 0, tuple(_expression_words(p))).simplified()


def differentiate(form: MultilinearForm, direction: Optional[int] = None) -> MultilinearForm:
    """One more Gateaux derivative in x with the fresh slot h_direction.

    Each x becomes h in turn; each inverse slot u^-1 becomes -u^-1 du(h) u^-1.
    """

    direction = direction if direction is not None else form.order + 1
    if direction != form.order + 1:
        raise ValueError(f"The new direction of an order-{form.order} form must be h{form.order + 1}.")
    words: List[Word] = []
    for word in form.words:
        for position, slot in enumerate(word.slots):
            if isinstance(slot, DirectionSlot):
                continue
            if isinstance(slot, VarSlot):
                middle = [slot_word(DirectionSlot(direction))]
            else:
                inner = differentiate(expand_form(slot.expression, form.algebra))
                inverse_word = slot_word(slot)
                middle = [
                    concat(inverse_word, inner_word.relabeled({1: direction}), inverse_word).scaled(-1)
                    for inner_word in inner.words
                ]
            prefix = word.prefix(position).scaled(word.prefactor)
            suffix = word.suffix(position)
            words.extend(concat(prefix, piece, suffix) for piece in middle)
    return MultilinearForm(form.algebra, form.order + 1, tuple(words))


def derivative(p: NcExpression, m: int, algebra: Optional[Algebra] = None) -> MultilinearForm:
    """∂^m p as a sum over injective assignments of h_1..h_m to the x positions of each word."""

    if m < 1:
        raise ValueError(f"Derivative order must be at least 1, got {m}.")
    form = expand_form(p, algebra)
    for _ in range(m):
        form = differentiate(form)
    logger.debug("∂^%d of %s has %d words", m, format_expression(p), len(form.words))
    return form.simplified()


def derivative_recursive(p: NcExpression, m: int = 1, algebra: Optional[Algebra] = None) -> MultilinearForm:
    """∂^m p from the product rule on f(x) x a:

    ∂^m(f x a)(h_1..h_m) = ∂^m f(h_1..h_m) x a + sum_j ∂^(m-1) f(.. without h_j ..) h_j a.
    """

    if m < 1:
        raise ValueError(f"Derivative order must be at least 1, got {m}.")
    base = expand_form(p, algebra)
    if not base.is_polynomial:
        raise NotPolynomial("The product-rule recursion handles polynomial expressions only.")
    words: List[Word] = []
    for word in base.words:
        for constants, slots in _recursive_words(word.constants, tuple(range(1, m + 1))):
            words.append(Word(word.prefactor, constants, slots))
    return MultilinearForm(base.algebra, m, tuple(words)).simplified()


@lru_cache(maxsize=4096)
def _recursive_words(
    constants: Tuple[Constant, ...], labels: Tuple[int, ...]
) -> Tuple[Tuple[Tuple[Constant, ...], Tuple[Slot, ...]], ...]:
    n = len(constants) - 1
    if len(labels) > n:
        return ()
    if n == 0:
        return ((constants, ()),)
    head, last = constants[:-1], constants[-1]
    results = []
    for head_constants, head_slots in _recursive_words(head, labels):
        results.append((head_constants + (last,), head_slots + (XSLOT,)))
    for label in labels:
        rest = tuple(other for other in labels if other != label)
        for head_constants, head_slots in _recursive_words(head, rest):
            results.append((head_constants + (last,), head_slots + (DirectionSlot(label),)))
    return tuple(results)


def eval_form(form: MultilinearForm, x: AlgebraElement, *directions: AlgebraElement) -> AlgebraElement:
    """Evaluate the form at x with h_j = directions[j - 1], folding products from the left."""

    if len(directions) != form.order:
        raise ArityMismatch(f"Order-{form.order} form needs {form.order} directions, got {len(directions)}.")
    exact = x.is_exact and all(h.is_exact for h in directions)
    total = form.algebra.zero(exact=exact)
    inverses: Dict[NcExpression, AlgebraElement] = {}
    for word in form.words:
        value: Optional[AlgebraElement] = None
        for position, constant in enumerate(word.constants):
            if constant is not None:
                value = constant if value is None else mul(value, constant)
            if position < len(word.slots):
                slot_value = _slot_value(word.slots[position], x, directions, inverses)
                value = slot_value if value is None else mul(value, slot_value)
        if value is None:
            value = form.algebra.one()
        total = total + value.scale(word.prefactor if exact else float(word.prefactor))
    return total


def _slot_value(
    slot: Slot,
    x: AlgebraElement,
    directions: Sequence[AlgebraElement],
    inverses: Dict[NcExpression, AlgebraElement],
) -> AlgebraElement:
    if isinstance(slot, VarSlot):
        return x
    if isinstance(slot, DirectionSlot):
        return directions[slot.index - 1]
    if slot.expression not in inverses:
        value = evaluate(slot.expression, x)
        try:
            inverses[slot.expression] = inverse(value)
        except NotInvertible as exc:
            raise NotInvertible(
                f"inv({format_expression(slot.expression)}) is singular at {x.format()}.", Inverse(slot.expression)
            ) from exc
    return inverses[slot.expression]


def substitute_slots(
    form: MultilinearForm,
    x_words: Sequence[Word],
    direction_words: Mapping[int, Sequence[Word]],
    order: int,
    inverse_map=None,
) -> MultilinearForm:
    """Replace x and selected directions by sums of words, distributing over products."""

    results: List[Word] = []
    for word in form.words:
        choices: List[Sequence[Word]] = []
        for slot in word.slots:
            if isinstance(slot, VarSlot):
                choices.append(x_words)
            elif isinstance(slot, DirectionSlot) and slot.index in direction_words:
                choices.append(direction_words[slot.index])
            elif isinstance(slot, InverseSlot) and inverse_map is not None:
                choices.append([slot_word(inverse_map(slot))])
            else:
                choices.append([slot_word(slot)])
        for picked in itertools.product(*choices):
            pieces: List[Word] = [constant_word(word.constants[0], word.prefactor)]
            for position, piece in enumerate(picked):
                pieces.append(piece)
                pieces.append(constant_word(word.constants[position + 1]))
            results.append(concat(*pieces))
    return MultilinearForm(form.algebra, order, tuple(results)).simplified()


def pushforward(dg: MultilinearForm, f: NcExpression) -> MultilinearForm:
    """The chain-rule form ∂g(f(x))(∂f(x)(h)) for an order-1 form ∂g."""

    if dg.order != 1:
        raise ValueError(f"pushforward expects a first derivative, got order {dg.order}.")
    inner = expand_form(f, dg.algebra)
    inner_derivative = derivative(f, 1, dg.algebra)
    return substitute_slots(
        dg,
        inner.words,
        {1: inner_derivative.words},
        order=1,
        inverse_map=lambda slot: InverseSlot(substitute(slot.expression, f)),
    )


def transpositions(order: int) -> Iterable[Tuple[int, int]]:
    """All (i, j) with 1 <= i < j <= order in lexicographic order."""

    return itertools.combinations(range(1, order + 1), 2)
