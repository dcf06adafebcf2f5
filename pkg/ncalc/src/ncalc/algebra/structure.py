"""Finite-dimensional algebras defined by structural constants, and their elements."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ncalc.errors import AlgebraMismatch, FlagContradiction, NotInvertible
from ncalc.utils.linalg import exact_solve
from ncalc.utils.rationals import Scalar, format_scalar

logger = logging.getLogger(__name__)

INVERSE_TOLERANCE = 1e-9
_INT64_SAFE = 2**20


@dataclass(frozen=True)
class AlgebraFlags:
    """Declared properties of an algebra, verified when the algebra is built."""

    unital: bool = False
    associative: bool = False
    division: bool = False
    multiplicative_norm: bool = False


@dataclass(frozen=True, order=True)
class NormValue:
    """Euclidean coordinate norm of an element."""

    value: float

    def __float__(self) -> float:
        return self.value


def _exact_array(values: Iterable, shape: Tuple[int, ...]) -> np.ndarray:
    array = np.array([Fraction(value) for value in values], dtype=object).reshape(shape)
    array.setflags(write=False)
    return array


def _integral_view(constants: np.ndarray) -> Optional[np.ndarray]:
    """Return an int64 copy when every constant is a small integer."""

    if all(value.denominator == 1 and abs(value.numerator) <= _INT64_SAFE for value in constants.flat):
        return constants.astype(np.int64)
    return None


class Algebra:
    """A finite-dimensional algebra over the rationals, immutable after construction.

    ``constants[k, l, p]`` is the coefficient of ``e_p`` in ``e_k * e_l``.
    """

    def __init__(
        self,
        name: str,
        basis_labels: Sequence[str],
        constants: np.ndarray | Sequence,
        flags: AlgebraFlags = AlgebraFlags(),
        generators: Optional[Mapping[str, np.ndarray | Sequence]] = None,
        *,
        verify: bool = True,
        seed: int = 0,
        samples: int = 24,
    ) -> None:
        labels = tuple(str(label) for label in basis_labels)
        dim = len(labels)
        if dim == 0:
            raise ValueError("An algebra needs at least one basis vector.")
        if len(set(labels)) != dim:
            raise ValueError(f"Basis labels must be distinct: {labels}")
        array = np.asarray(constants, dtype=object)
        if array.shape != (dim, dim, dim):
            raise ValueError(f"Structural constants must have shape {(dim, dim, dim)}, got {array.shape}.")

        self.name = name
        self.dim = dim
        self.basis_labels = labels
        self.flags = flags
        self._constants = _exact_array(array.flat, array.shape)
        self._real_constants = self._constants.astype(float)
        self._real_constants.setflags(write=False)

        registered = {}
        for gen_name, matrix in (generators or {}).items():
            gen_array = np.asarray(matrix, dtype=object)
            if gen_array.shape != (dim, dim):
                raise ValueError(f"Generator '{gen_name}' must be a {dim}x{dim} matrix, got {gen_array.shape}.")
            registered[gen_name] = _exact_array(gen_array.flat, gen_array.shape)
        self._generators = MappingProxyType(registered)

        if verify:
            self._verify_flags(seed=seed, samples=samples)
        logger.info("Constructed algebra '%s' of dimension %d with flags %s", name, dim, flags)

    # ------------------------------------------------------------------ data

    @property
    def constants(self) -> np.ndarray:
        return self._constants

    @property
    def real_constants(self) -> np.ndarray:
        return self._real_constants

    @property
    def generators(self) -> Mapping[str, np.ndarray]:
        """Extra linear maps registered for the representation basis."""

        return self._generators

    @cached_property
    def nonzero_constants(self) -> Tuple[Tuple[int, int, int, Fraction], ...]:
        return tuple(
            (int(k), int(l), int(p), self._constants[k, l, p])
            for k, l, p in np.argwhere(self._real_constants != 0.0)
        )

    @cached_property
    def norm_constant(self) -> float:
        """K such that |ab| <= K |a| |b| for the coordinate norm."""

        if self.flags.multiplicative_norm:
            return 1.0
        total = sum(np.linalg.norm(self._real_constants[k].T, 2) ** 2 for k in range(self.dim))
        return max(1.0, math.sqrt(total))

    def index_of(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError as exc:
            raise KeyError(f"Algebra '{self.name}' has no basis label '{label}'.") from exc

    # -------------------------------------------------------------- elements

    def element(self, coords: Sequence[Scalar | int]) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def basis(self, index: Union[int, str]) -> "AlgebraElement":
        position = self.index_of(index) if isinstance(index, str) else index
        if not 0 <= position < self.dim:
            raise IndexError(f"Basis index {position} out of range for dimension {self.dim}.")
        return AlgebraElement(self, [1 if k == position else 0 for k in range(self.dim)])

    def zero(self, exact: bool = True) -> "AlgebraElement":
        return AlgebraElement(self, [0 if exact else 0.0] * self.dim)

    def one(self) -> "AlgebraElement":
        if not self.flags.unital:
            raise ValueError(f"Algebra '{self.name}' is not unital.")
        return self._unit

    @cached_property
    def _unit(self) -> "AlgebraElement":
        return self.basis(0)

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"

    # ---------------------------------------------------------- verification

    def _verify_flags(self, seed: int, samples: int) -> None:
        unit_witness = unit_counterexample(self._constants)
        if self.flags.unital and unit_witness is not None:
            raise FlagContradiction(
                "unital", unit_witness, f"'{self.name}': e0 is not a two-sided unit at basis index {unit_witness[1]}."
            )
        if not self.flags.unital and unit_witness is None:
            raise FlagContradiction("unital", None, f"'{self.name}' is declared non-unital but e0 is a unit.")

        assoc_witness = self.associator_counterexample()
        if self.flags.associative and assoc_witness is not None:
            raise FlagContradiction(
                "associative", assoc_witness, f"'{self.name}': associator is nonzero on basis triple {assoc_witness}."
            )
        if not self.flags.associative and assoc_witness is None:
            raise FlagContradiction(
                "associative", None, f"'{self.name}' is declared nonassociative but every basis associator vanishes."
            )

        rng = np.random.default_rng(seed)
        if self.flags.division:
            if not self.flags.unital:
                raise FlagContradiction("division", None, f"'{self.name}': a division algebra must be unital.")
            for _ in range(samples):
                candidate = self._random_integral_element(rng)
                try:
                    inverse(candidate)
                except NotInvertible as exc:
                    raise FlagContradiction(
                        "division", None, f"'{self.name}': sampled element {candidate.format()} is not invertible."
                    ) from exc
        if self.flags.multiplicative_norm:
            for _ in range(samples):
                left = self._random_integral_element(rng)
                right = self._random_integral_element(rng)
                product = mul(left, right)
                if squared_norm(product) != squared_norm(left) * squared_norm(right):
                    raise FlagContradiction(
                        "multiplicative_norm",
                        None,
                        f"'{self.name}': |ab| != |a||b| for a={left.format()}, b={right.format()}.",
                    )

    def _random_integral_element(self, rng: np.random.Generator) -> "AlgebraElement":
        while True:
            coords = [int(value) for value in rng.integers(-3, 4, size=self.dim)]
            if any(coords):
                return AlgebraElement(self, coords)

    def associator_counterexample(self) -> Optional[Tuple[int, int, int]]:
        """First basis triple (k, l, m) with (e_k e_l) e_m != e_k (e_l e_m), if any."""

        return associator_counterexample(self._constants)


def unit_counterexample(constants: np.ndarray) -> Optional[Tuple[int, int]]:
    """First (0, k) for which e0 fails to act as a two-sided unit on e_k, if any."""

    dim = constants.shape[0]
    for k in range(dim):
        expected = [1 if p == k else 0 for p in range(dim)]
        if list(constants[0, k]) != expected or list(constants[k, 0]) != expected:
            return (0, k)
    return None


def associator_counterexample(constants: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """First basis triple (k, l, m) with a nonzero associator, decided exactly."""

    table = _integral_view(constants)
    if table is None:
        table = constants
    left = np.tensordot(table, table, axes=([2], [0]))
    right = np.tensordot(table, table, axes=([1], [2])).transpose(0, 2, 3, 1)
    mismatches = np.argwhere(left != right)
    if len(mismatches) == 0:
        return None
    k, l, m, _ = (int(index) for index in mismatches[0])
    return (k, l, m)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Coordinates of an element relative to the basis of its algebra.

    Coordinates are Fractions on the exact path and float64 on the real path.
    """

    algebra: Algebra
    coords: np.ndarray

    def __post_init__(self) -> None:
        values = list(np.asarray(self.coords, dtype=object).ravel())
        if len(values) != self.algebra.dim:
            raise ValueError(
                f"Expected {self.algebra.dim} coordinates for '{self.algebra.name}', got {len(values)}."
            )
        if any(isinstance(value, (float, np.floating)) for value in values):
            array = np.array([float(value) for value in values], dtype=float)
        else:
            array = np.array([Fraction(value) for value in values], dtype=object)
        array.setflags(write=False)
        object.__setattr__(self, "coords", array)

    @property
    def is_exact(self) -> bool:
        return self.coords.dtype == object

    def to_real(self) -> "AlgebraElement":
        return self if not self.is_exact else AlgebraElement(self.algebra, self.coords.astype(float))

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.is_exact:
            return all(value == 0 for value in self.coords)
        return bool(np.max(np.abs(self.coords)) <= tol)

    def isclose(self, other: "AlgebraElement", tol: float) -> bool:
        return (self - other).is_zero(tol) if not (self.is_exact and other.is_exact) else self == other

    def scale(self, factor: Scalar | int) -> "AlgebraElement":
        if self.is_exact and not isinstance(factor, (float, np.floating)):
            factor = Fraction(factor)
            return AlgebraElement(self.algebra, [factor * value for value in self.coords])
        return AlgebraElement(self.algebra, self.coords.astype(float) * float(factor))

    def _paired(self, other: "AlgebraElement") -> Tuple[np.ndarray, np.ndarray]:
        _require_same(self, other)
        if self.is_exact and other.is_exact:
            return self.coords, other.coords
        return self.coords.astype(float), other.coords.astype(float)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        left, right = self._paired(other)
        return AlgebraElement(self.algebra, left + right)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        left, right = self._paired(other)
        return AlgebraElement(self.algebra, left - right)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        if isinstance(other, (int, Fraction, float, np.floating)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float, np.floating)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, (float, np.floating)):
            return self.scale(1.0 / float(other))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((id(self.algebra), tuple(self.coords)))

    def format(self) -> str:
        """Render as a signed sum over basis labels, e.g. ``3/25 - 4/25*i``."""

        parts = []
        for label, value in zip(self.algebra.basis_labels, self.coords):
            if value == 0:
                continue
            is_unit_label = self.algebra.flags.unital and label == self.algebra.basis_labels[0]
            magnitude = abs(value)
            if is_unit_label:
                body = format_scalar(magnitude)
            elif magnitude == 1:
                body = label
            else:
                body = f"{format_scalar(magnitude)}*{label}"
            parts.append(("-" if value < 0 else "+", body))
        if not parts:
            return "0"
        sign, body = parts[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra.name}: {self.format()})"


def _require_same(*elements: AlgebraElement) -> None:
    first = elements[0].algebra
    for element in elements[1:]:
        if element.algebra is not first:
            raise AlgebraMismatch(
                f"Elements belong to different algebras: '{first.name}' and '{element.algebra.name}'."
            )


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product through the structural constants: (ab)^p = sum a^k b^l C^p_kl."""

    left, right = a._paired(b)
    table = a.algebra.constants if left.dtype == object else a.algebra.real_constants
    coords = np.tensordot(np.multiply.outer(left, right), table, axes=([0, 1], [0, 1]))
    return AlgebraElement(a.algebra, coords)


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return mul(a, b) - mul(b, a)


def associator(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> AlgebraElement:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def left_matrix(a: AlgebraElement) -> np.ndarray:
    """Matrix of x -> a x; column m holds the coordinates of a e_m."""

    table = a.algebra.constants if a.is_exact else a.algebra.real_constants
    return np.tensordot(a.coords, table, axes=([0], [0])).T


def right_matrix(a: AlgebraElement) -> np.ndarray:
    """Matrix of x -> x a; column m holds the coordinates of e_m a."""

    table = a.algebra.constants if a.is_exact else a.algebra.real_constants
    return np.tensordot(table, a.coords, axes=([1], [0])).T


def inverse(a: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse obtained by solving a y = 1 and checking y a = 1."""

    algebra = a.algebra
    if not algebra.flags.unital:
        raise NotInvertible(f"Algebra '{algebra.name}' has no unit, so {a.format()} has no inverse.")
    one = algebra.one()
    if a.is_exact:
        solution = exact_solve(left_matrix(a), one.coords)
        if solution is None:
            raise NotInvertible(f"{a.format()} is not invertible in '{algebra.name}'.")
        candidate = AlgebraElement(algebra, solution)
        if mul(candidate, a) != one:
            raise NotInvertible(f"{a.format()} has a right inverse but no two-sided inverse.")
        return candidate

    matrix = left_matrix(a)
    try:
        solution = np.linalg.solve(matrix, one.coords.astype(float))
    except np.linalg.LinAlgError as exc:
        raise NotInvertible(f"{a.format()} is not invertible in '{algebra.name}'.") from exc
    candidate = AlgebraElement(algebra, solution)
    scale = max(1.0, norm(a).value * norm(candidate).value)
    if not (mul(candidate, a) - one).is_zero(INVERSE_TOLERANCE * scale) or not np.all(np.isfinite(solution)):
        raise NotInvertible(f"{a.format()} is numerically singular in '{algebra.name}'.")
    return candidate


def squared_norm(a: AlgebraElement) -> Scalar:
    return sum((value * value for value in a.coords), Fraction(0) if a.is_exact else 0.0)


def norm(a: AlgebraElement) -> NormValue:
    """Euclidean norm of the coordinates on the declared basis."""

    return NormValue(math.sqrt(float(squared_norm(a))))
