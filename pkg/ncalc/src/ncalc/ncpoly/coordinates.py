"""Exact coordinate expansion of forms and expressions through the structural constants.

A form of order m becomes, for each x-degree r, an integer tensor with axes
(h_1 .. h_m, x .. x, output) over a common denominator. The x axes are summed over
their permutations so that equal maps have equal tensors.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from sympy import QQ
from sympy.polys.rings import ring

from ncalc.algebra.structure import Algebra, AlgebraElement
from ncalc.errors import NotPolynomial

from .expression import NcExpression, algebra_of
from .forms import DirectionSlot, MultilinearForm, VarSlot, Word, expand_form, transpositions

logger = logging.getLogger(__name__)

_INT64_LIMIT = 2**62


@lru_cache(maxsize=32)
def _integer_table(algebra: Algebra) -> Tuple[np.ndarray, int, int]:
    """Structural constants scaled to integers: (table, denominator, max |entry|)."""

    denominator = reduce(math.lcm, (value.denominator for value in algebra.constants.flat), 1)
    scaled = [int(value * denominator) for value in algebra.constants.flat]
    bound = max((abs(value) for value in scaled), default=0)
    dtype = np.int64 if bound < _INT64_LIMIT else object
    table = np.array(scaled, dtype=dtype).reshape(algebra.constants.shape)
    return table, denominator, bound


def _integer_vector(value: AlgebraElement) -> Tuple[List[int], int]:
    if not value.is_exact:
        raise ValueError("Coordinate expansion needs exact constants.")
    denominator = reduce(math.lcm, (coord.denominator for coord in value.coords), 1)
    return [int(coord * denominator) for coord in value.coords], denominator


def _as_array(values, bound: int) -> np.ndarray:
    return np.array(values, dtype=np.int64 if bound < _INT64_LIMIT else object)


def _contract(state: np.ndarray, other: np.ndarray) -> np.ndarray:
    if state.dtype != other.dtype:
        state, other = state.astype(object), other.astype(object)
    return np.tensordot(state, other, axes=([-1], [0]))


@lru_cache(maxsize=256)
def _right_factor(algebra: Algebra, constant: AlgebraElement) -> Tuple[np.ndarray, int, int]:
    """Integer table of y -> y * constant: (table, denominator, max |entry|)."""

    table, _, table_bound = _integer_table(algebra)
    vector, den = _integer_vector(constant)
    vector_bound = max(abs(value) for value in vector)
    right = np.tensordot(table.astype(object), np.array(vector, dtype=object), axes=([1], [0]))
    right_bound = table_bound * vector_bound * algebra.dim
    if right_bound < _INT64_LIMIT:
        right = right.astype(np.int64)
    right.setflags(write=False)
    return right, den, right_bound


@lru_cache(maxsize=4096)
def _word_tensor(word: Word, algebra: Algebra) -> Tuple[np.ndarray, Fraction, int]:
    """Integer tensor with axes in slot order plus output, its scale, and an entry bound; cached per word."""

    table, table_den, table_bound = _integer_table(algebra)
    dim = algebra.dim
    scale = Fraction(word.prefactor)
    first = word.constants[0]
    if first is None:
        vector, den = [1 if index == 0 else 0 for index in range(dim)], 1
    else:
        vector, den = _integer_vector(first)
    bound = max(abs(value) for value in vector)
    state = _as_array(vector, bound)
    scale /= den
    for position, _slot in enumerate(word.slots):
        bound = bound * table_bound * dim
        state = _contract(state, table if bound < _INT64_LIMIT else table.astype(object))
        scale /= table_den
        constant = word.constants[position + 1]
        if constant is None:
            continue
        right, den, right_bound = _right_factor(algebra, constant)
        bound = bound * right_bound * dim
        state = _contract(state, right if bound < _INT64_LIMIT else right.astype(object))
        scale /= den * table_den
    state.setflags(write=False)
    return state, scale, bound


def _canonical_axes(word: Word) -> Tuple[int, ...]:
    directions = sorted(
        (slot.index, position) for position, slot in enumerate(word.slots) if isinstance(slot, DirectionSlot)
    )
    variables = [position for position, slot in enumerate(word.slots) if isinstance(slot, VarSlot)]
    return tuple(position for _, position in directions) + tuple(variables) + (len(word.slots),)


def _symmetrize(tensor: np.ndarray, order: int, degree: int) -> np.ndarray:
    if degree < 2:
        return tensor
    head = list(range(order))
    tail = [order + degree]
    total = None
    for permutation in itertools.permutations(range(order, order + degree)):
        moved = np.transpose(tensor, head + list(permutation) + tail)
        total = moved if total is None else total + moved
    return total


@dataclass(frozen=True, eq=False)
class CoordinatePolynomial:
    """Integer coefficient tensors per x-degree over a common denominator."""

    algebra: Algebra
    order: int
    layers: Mapping[int, np.ndarray]
    denominator: int

    def __post_init__(self) -> None:
        kept = {degree: layer for degree, layer in self.layers.items() if np.any(layer != 0)}
        object.__setattr__(self, "layers", MappingProxyType(dict(sorted(kept.items()))))

    def _shape(self, degree: int) -> Tuple[int, ...]:
        return (self.algebra.dim,) * (self.order + degree + 1)

    def layer(self, degree: int) -> np.ndarray:
        if degree in self.layers:
            return self.layers[degree]
        return np.zeros(self._shape(degree), dtype=object)

    def is_zero(self) -> bool:
        return not self.layers

    def _check(self, other: "CoordinatePolynomial") -> None:
        if other.algebra is not self.algebra or other.order != self.order:
            raise ValueError("Coordinate polynomials differ in algebra or order.")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoordinatePolynomial):
            return NotImplemented
        if other.algebra is not self.algebra or other.order != self.order:
            return False
        if set(self.layers) != set(other.layers):
            return False
        return all(
            np.array_equal(
                self.layers[degree].astype(object) * other.denominator,
                other.layers[degree].astype(object) * self.denominator,
            )
            for degree in self.layers
        )

    __hash__ = None

    def __add__(self, other: "CoordinatePolynomial") -> "CoordinatePolynomial":
        self._check(other)
        layers = {}
        for degree in set(self.layers) | set(other.layers):
            layers[degree] = (
                self.layer(degree).astype(object) * other.denominator
                + other.layer(degree).astype(object) * self.denominator
            )
        return CoordinatePolynomial(self.algebra, self.order, layers, self.denominator * other.denominator)

    def __neg__(self) -> "CoordinatePolynomial":
        return CoordinatePolynomial(
            self.algebra, self.order, {d: -layer for d, layer in self.layers.items()}, self.denominator
        )

    def __sub__(self, other: "CoordinatePolynomial") -> "CoordinatePolynomial":
        return self + (-other)

    def transposed(self, i: int, j: int) -> "CoordinatePolynomial":
        """Swap the arguments h_i and h_j (1-based)."""

        layers = {degree: np.swapaxes(layer, i - 1, j - 1) for degree, layer in self.layers.items()}
        return CoordinatePolynomial(self.algebra, self.order, layers, self.denominator)

    def evaluate(self, x: AlgebraElement, *directions: AlgebraElement) -> AlgebraElement:
        """Exact value at x and h_1..h_order."""

        total = [Fraction(0)] * self.algebra.dim
        for degree, layer in self.layers.items():
            state = layer.astype(object)
            for h in directions:
                state = np.tensordot(h.coords, state, axes=([0], [0]))
            for _ in range(degree):
                state = np.tensordot(x.coords, state, axes=([0], [0]))
            scale = Fraction(1, self.denominator * math.factorial(degree))
            total = [acc + scale * Fraction(value) for acc, value in zip(total, state)]
        return self.algebra.element(total)

    def to_sympy(self) -> List:
        """Output coordinates as sympy polynomials over QQ in x0.. and h<j>_0.."""

        dim = self.algebra.dim
        names = [f"x{k}" for k in range(dim)]
        names += [f"h{j}_{k}" for j in range(1, self.order + 1) for k in range(dim)]
        poly_ring, *generators = ring(",".join(names), QQ)
        x_gens = generators[:dim]
        h_gens = [generators[dim * j : dim * (j + 1)] for j in range(1, self.order + 1)]
        outputs = [poly_ring.zero for _ in range(dim)]
        for degree, layer in self.layers.items():
            scale = self.denominator * math.factorial(degree)
            for index in zip(*np.nonzero(layer != 0)):
                index = tuple(int(value) for value in index)
                term = poly_ring.one * QQ(int(layer[index]), scale)
                for slot, coordinate in enumerate(index[: self.order]):
                    term *= h_gens[slot][coordinate]
                for coordinate in index[self.order : self.order + degree]:
                    term *= x_gens[coordinate]
                outputs[index[-1]] += term
        return outputs

    def format(self) -> str:
        return "(" + ", ".join(str(poly) for poly in self.to_sympy()) + ")"


def canonical_expand_form(form: MultilinearForm) -> CoordinatePolynomial:
    """Exact expansion of a polynomial form; inverse slots are rejected."""

    if not form.is_polynomial:
        raise NotPolynomial("Coordinate expansion is defined for polynomial forms only.")
    grouped: Dict[int, List[Tuple[np.ndarray, Fraction, int]]] = {}
    for word in form.words:
        tensor, scale, bound = _word_tensor(word, form.algebra)
        tensor = np.transpose(tensor, _canonical_axes(word))
        grouped.setdefault(word.x_degree, []).append((tensor, scale, bound))

    denominator = reduce(math.lcm, (scale.denominator for entries in grouped.values() for _, scale, _ in entries), 1)
    layers: Dict[int, np.ndarray] = {}
    for degree, entries in grouped.items():
        factors = [int(scale * denominator) for _, scale, _ in entries]
        total_bound = sum(abs(factor) * bound for factor, (_, _, bound) in zip(factors, entries))
        total_bound *= math.factorial(degree)
        use_int = total_bound < _INT64_LIMIT and all(tensor.dtype == np.int64 for tensor, _, _ in entries)
        accumulated = None
        for factor, (tensor, _, _) in zip(factors, entries):
            piece = tensor * factor if use_int else tensor.astype(object) * factor
            accumulated = piece if accumulated is None else accumulated + piece
        accumulated = _symmetrize(accumulated, form.order, degree)
        layers[degree] = accumulated.astype(object)
    return CoordinatePolynomial(form.algebra, form.order, layers, denominator)


def canonical_expand(p: Union[NcExpression, MultilinearForm], algebra: Optional[Algebra] = None) -> CoordinatePolynomial:
    """Exact coordinate polynomial of an expression or form."""

    if isinstance(p, MultilinearForm):
        return canonical_expand_form(p)
    form = expand_form(p, algebra)
    if not form.is_polynomial:
        raise NotPolynomial("Coordinate expansion rejects expressions containing inv(...).")
    return canonical_expand_form(form)


def equal(
    p: Union[NcExpression, MultilinearForm],
    q: Union[NcExpression, MultilinearForm],
    algebra: Optional[Algebra] = None,
) -> bool:
    """Equality as maps, decided by exact coordinate expansion.

    Either side may supply the algebra when the other records none.
    """

    algebra = algebra or _recorded_algebra(p) or _recorded_algebra(q)
    return canonical_expand(p, algebra) == canonical_expand(q, algebra)


def _recorded_algebra(p: Union[NcExpression, MultilinearForm]) -> Optional[Algebra]:
    return p.algebra if isinstance(p, MultilinearForm) else algebra_of(p)


class SymmetryClass(str, Enum):
    SYMMETRIC = "symmetric"
    SKEW = "skew"
    NEITHER = "neither"


@dataclass(frozen=True)
class AsymmetryWitness:
    """A transposition of arguments that changes the form, with the nonzero difference."""

    order: int
    transposition: Tuple[int, int]
    difference: MultilinearForm
    expansion: CoordinatePolynomial


def symmetry_class(form: MultilinearForm) -> SymmetryClass:
    """Symmetric, skew or neither under every transposition of arguments, decided exactly.

    Forms of order below 2 and the zero form count as symmetric.
    """

    if form.order < 2:
        return SymmetryClass.SYMMETRIC
    expansion = canonical_expand_form(form)
    if expansion.is_zero():
        return SymmetryClass.SYMMETRIC
    negated = -expansion
    symmetric = skew = True
    for i, j in transpositions(form.order):
        swapped = expansion.transposed(i, j)
        symmetric = symmetric and swapped == expansion
        skew = skew and swapped == negated
        if not (symmetric or skew):
            return SymmetryClass.NEITHER
    return SymmetryClass.SYMMETRIC if symmetric else SymmetryClass.SKEW


def asymmetry_witness(form: MultilinearForm) -> Optional[AsymmetryWitness]:
    """First transposition (lexicographic) under which the form changes, or None."""

    if form.order < 2:
        return None
    expansion = canonical_expand_form(form)
    for i, j in transpositions(form.order):
        swapped = expansion.transposed(i, j)
        if swapped != expansion:
            difference = (form - form.permuted({i: j, j: i})).simplified()
            return AsymmetryWitness(form.order, (i, j), difference, expansion - swapped)
    return None
