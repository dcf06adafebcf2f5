"""Standard components of tensors and the linear system linking them to map matrices."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ncalc.algebra.structure import Algebra, AlgebraElement, left_matrix, right_matrix
from ncalc.errors import AlgebraMismatch, InexactScalarPath, NoRepresentation, UnsupportedForNonassociative
from ncalc.utils.linalg import exact_rank, exact_solve
from ncalc.utils.rationals import format_scalar

from .operators import DELTA, LEFT_FIRST, RIGHT_FIRST, TensorOperator, TensorTerm, generator_matrix

logger = logging.getLogger(__name__)


def _zeros(dim: int) -> np.ndarray:
    return np.array([Fraction(0)] * (dim * dim), dtype=object).reshape(dim, dim)


def sandwich_tensor(algebra: Algebra, convention: str = LEFT_FIRST) -> np.ndarray:
    """S[i, j, k, m]: coefficient of e_k in the image of e_m under the tensor e_i ⊗ e_j."""

    table = algebra.constants
    if convention == RIGHT_FIRST:
        # e_i (e_m e_j): C[m, j, q] C[i, q, k]
        inner = np.tensordot(table, table, axes=([2], [1]))  # (m, j, i, k)
        return inner.transpose(2, 1, 3, 0)
    # (e_i e_m) e_j: C[i, m, q] C[q, j, k]
    inner = np.tensordot(table, table, axes=([2], [0]))  # (i, m, j, k)
    return inner.transpose(0, 2, 3, 1)


@dataclass(frozen=True, eq=False)
class LinearMapMatrix:
    """Coordinates f[k, m] of a linear map: the image of e_m has coordinates f[:, m]."""

    algebra: Algebra
    matrix: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.matrix, dtype=object)
        if array.shape != (self.algebra.dim, self.algebra.dim):
            raise ValueError(
                f"Linear map on '{self.algebra.name}' needs a {self.algebra.dim}x{self.algebra.dim} matrix, "
                f"got {array.shape}."
            )
        if any(isinstance(value, (float, np.floating)) for value in array.flat):
            array = array.astype(float)
        else:
            array = np.array([Fraction(value) for value in array.flat], dtype=object).reshape(array.shape)
        array.setflags(write=False)
        object.__setattr__(self, "matrix", array)

    @classmethod
    def identity(cls, algebra: Algebra) -> "LinearMapMatrix":
        return cls(algebra, generator_matrix(algebra, DELTA))

    @classmethod
    def from_generator(cls, algebra: Algebra, name: str) -> "LinearMapMatrix":
        return cls(algebra, generator_matrix(algebra, name))

    @classmethod
    def left_multiplication(cls, a: AlgebraElement) -> "LinearMapMatrix":
        """Matrix of x -> a x."""

        return cls(a.algebra, left_matrix(a))

    @classmethod
    def right_multiplication(cls, a: AlgebraElement) -> "LinearMapMatrix":
        """Matrix of x -> x a."""

        return cls(a.algebra, right_matrix(a))

    @property
    def is_exact(self) -> bool:
        return self.matrix.dtype == object

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        matrix = self.matrix if x.is_exact and self.is_exact else self.matrix.astype(float)
        return AlgebraElement(self.algebra, matrix.dot(x.coords))

    def equals(self, other: "LinearMapMatrix") -> bool:
        return self.algebra is other.algebra and all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat))


class StandardComponents:
    """Per-generator arrays g[i, j] of the tensor sum of g[i, j] e_i ⊗ e_j."""

    def __init__(self, algebra: Algebra, components: Mapping[str, np.ndarray]) -> None:
        self.algebra = algebra
        blocks: Dict[str, np.ndarray] = {}
        for name, block in components.items():
            array = np.asarray(block, dtype=object)
            if array.shape != (algebra.dim, algebra.dim):
                raise ValueError(f"Component block '{name}' must have shape {(algebra.dim, algebra.dim)}.")
            array = np.array([Fraction(value) for value in array.flat], dtype=object).reshape(array.shape)
            array.setflags(write=False)
            blocks[name] = array
        self.components = MappingProxyType(blocks)

    @property
    def generators(self) -> Tuple[str, ...]:
        return tuple(self.components)

    def block(self, name: str = DELTA) -> np.ndarray:
        return self.components.get(name, _zeros(self.algebra.dim))

    def to_operator(self) -> TensorOperator:
        terms: List[TensorTerm] = []
        for name, block in self.components.items():
            for i, j in zip(*np.nonzero(block != 0)):
                terms.append(
                    TensorTerm(self.algebra.basis(int(i)).scale(block[i, j]), self.algebra.basis(int(j)), name)
                )
        return TensorOperator(self.algebra, self.algebra, tuple(terms))

    def equals(self, other: "StandardComponents") -> bool:
        if self.algebra is not other.algebra:
            return False
        names = set(self.components) | set(other.components)
        return all(
            a == b for name in names for a, b in zip(self.block(name).flat, other.block(name).flat)
        )

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {"generator": name, "g": [[str(value) for value in row] for row in block]}
            for name, block in self.components.items()
        ]

    def format(self) -> str:
        labels = self.algebra.basis_labels
        pieces = []
        for name, block in self.components.items():
            entries = [(int(i), int(j), block[i, j]) for i, j in zip(*np.nonzero(block != 0))]
            if not entries:
                continue
            if self.algebra.flags.unital and len(entries) == 1 and entries[0][:2] == (0, 0):
                pieces.append(f"{format_scalar(entries[0][2])}·{name}")
                continue
            body = " + ".join(f"{format_scalar(value)}*{labels[i]}⊗{labels[j]}" for i, j, value in entries)
            body = body.replace("+ -", "- ")
            pieces.append(body if name == DELTA else f"({body})·{name}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.algebra.name}: {self.format()})"


class ExtendedExpansion(StandardComponents):
    """Components over several generators, for maps outside the span of x -> a x b."""


def standard_components(t: TensorOperator) -> StandardComponents:
    """Expand every term in the basis: a ⊗ b = sum of a^i b^j e_i ⊗ e_j."""

    dim = t.target.dim
    blocks: Dict[str, np.ndarray] = {}
    for term in t.terms:
        if not (term.left.is_exact and term.right.is_exact):
            raise InexactScalarPath("Standard components are computed on the exact path only.")
        block = blocks.setdefault(term.generator, _zeros(dim))
        blocks[term.generator] = block + np.multiply.outer(term.left.coords, term.right.coords)
    if not blocks:
        blocks[DELTA] = _zeros(dim)
    cls = ExtendedExpansion if set(blocks) - {DELTA} else StandardComponents
    return cls(t.target, blocks)


def normalize(t: TensorOperator) -> TensorOperator:
    """Merge terms sharing a generator through their standard components."""

    return standard_components(t).to_operator()


def standard_components_mul(g: StandardComponents, h: StandardComponents) -> StandardComponents:
    """Components of the composition: (gh)^{pq} = sum g^{ij} h^{kl} C[i, k, p] C[l, j, q]."""

    if g.algebra is not h.algebra:
        raise AlgebraMismatch("Cannot multiply components over different algebras.")
    algebra = g.algebra
    if not algebra.flags.associative:
        raise UnsupportedForNonassociative(f"Component products need an associative algebra; '{algebra.name}' is not.")
    if set(g.generators) - {DELTA} or set(h.generators) - {DELTA}:
        raise ValueError("Component products are only defined on the identity generator.")
    table = algebra.constants
    first = np.tensordot(g.block(), table, axes=([0], [0]))  # (j, k, p)
    second = np.tensordot(first, h.block(), axes=([1], [0]))  # (j, p, l)
    product = np.tensordot(second, table, axes=([0, 2], [1, 0]))  # (p, q)
    return StandardComponents(algebra, {DELTA: product})


def to_matrix(t: TensorOperator | StandardComponents, convention: str = LEFT_FIRST) -> LinearMapMatrix:
    """f = sum over generators of sum g^{ij} M_ij G, with M_ij the matrix of x -> (e_i x) e_j."""

    components = t if isinstance(t, StandardComponents) else standard_components(t)
    algebra = components.algebra
    sandwich = sandwich_tensor(algebra, convention)
    total = _zeros(algebra.dim)
    for name, block in components.components.items():
        partial = np.tensordot(block, sandwich, axes=([0, 1], [0, 1]))
        total = total + partial.dot(generator_matrix(algebra, name))
    return LinearMapMatrix(algebra, total)


def _generator_block(sandwich: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    dim = sandwich.shape[0]
    composed = np.tensordot(sandwich, matrix, axes=([3], [0]))  # (i, j, k, m)
    return composed.transpose(2, 3, 0, 1).reshape(dim * dim, dim * dim)


class ComponentSolveMatrix:
    """B with rows (k, m) and columns (i, j); B[(k, m), (i, j)] = sum_q C[i, m, q] C[q, j, k]."""

    def __init__(self, algebra: Algebra, convention: str = LEFT_FIRST) -> None:
        self.algebra = algebra
        self.convention = convention
        self.sandwich = sandwich_tensor(algebra, convention)
        self.matrix = _generator_block(self.sandwich, generator_matrix(algebra, DELTA))

    @cached_property
    def rank(self) -> int:
        return exact_rank(self.matrix)

    @property
    def is_singular(self) -> bool:
        return self.rank < self.algebra.dim**2

    def block(self, generator: str) -> np.ndarray:
        return _generator_block(self.sandwich, generator_matrix(self.algebra, generator))


def component_solve_matrix(algebra: Algebra, convention: str = LEFT_FIRST) -> ComponentSolveMatrix:
    return ComponentSolveMatrix(algebra, convention)


def solve_components(f: LinearMapMatrix, convention: str = LEFT_FIRST) -> StandardComponents:
    """Components reproducing ``f``: identity generator alone when possible, else all registered ones.

    Free unknowns are set to zero, so a singular system yields one particular expansion.
    """

    if not f.is_exact:
        raise InexactScalarPath("solve_components needs exact coordinates; decimals select the floating path.")
    algebra = f.algebra
    dim = algebra.dim
    system = ComponentSolveMatrix(algebra, convention)
    rhs = f.matrix.reshape(dim * dim)

    solution = exact_solve(system.matrix, rhs)
    if solution is not None:
        logger.debug("Map on '%s' solved with the identity generator alone", algebra.name)
        return StandardComponents(algebra, {DELTA: solution.reshape(dim, dim)})

    names = [DELTA] + sorted(algebra.generators)
    stacked = np.hstack([system.block(name) for name in names])
    solution = exact_solve(stacked, rhs)
    if solution is None:
        raise NoRepresentation(
            f"Map is outside the span of generators {names} on '{algebra.name}' (rank of B is {system.rank})."
        )
    blocks = {}
    for position, name in enumerate(names):
        block = solution[position * dim * dim : (position + 1) * dim * dim].reshape(dim, dim)
        if name == DELTA or any(value != 0 for value in block.flat):
            blocks[name] = block
    if all(value == 0 for value in blocks[DELTA].flat):
        del blocks[DELTA]
    logger.info("Map on '%s' expanded over generators %s", algebra.name, list(blocks))
    return ExtendedExpansion(algebra, blocks)


@dataclass(frozen=True)
class RepresentationBasis:
    """Generators whose tensor orbits span the linear maps of an algebra."""

    algebra_name: str
    generators: Tuple[str, ...]
    rank_b: int
    spanned_rank: int
    dimension: int

    @property
    def complete(self) -> bool:
        return self.spanned_rank == self.dimension


def representation_basis(algebra: Algebra, convention: str = LEFT_FIRST) -> RepresentationBasis:
    """Rank analysis of B, adding registered generators while they enlarge the span."""

    system = ComponentSolveMatrix(algebra, convention)
    chosen: List[str] = [DELTA]
    columns = system.matrix
    spanned = system.rank
    target = algebra.dim**2
    for name in sorted(algebra.generators):
        if spanned == target:
            break
        candidate = np.hstack([columns, system.block(name)])
        rank = exact_rank(candidate)
        if rank > spanned:
            chosen.append(name)
            columns, spanned = candidate, rank
    basis = RepresentationBasis(algebra.name, tuple(chosen), system.rank, spanned, target)
    if not basis.complete:
        logger.warning(
            "Incomplete representation basis for '%s': generators %s span %d of %d dimensions",
            algebra.name,
            list(chosen),
            spanned,
            target,
        )
    else:
        logger.info("Representation basis for '%s': %s (rank of B %d)", algebra.name, list(chosen), system.rank)
    return basis


def _format_generators(names: Sequence[str]) -> str:
    return "{" + ", ".join("δ" if name == DELTA else name for name in names) + "}"


def describe_basis(basis: RepresentationBasis) -> str:
    return f"{_format_generators(basis.generators)}, rank {basis.rank_b}"
