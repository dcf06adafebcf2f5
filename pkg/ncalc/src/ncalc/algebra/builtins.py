"""Builtin algebras: the Cayley-Dickson tower, 2x2 real matrices and dual numbers."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Sequence

import numpy as np

from .structure import Algebra, AlgebraFlags

logger = logging.getLogger(__name__)

CONJUGATION = "conj"

BUILTIN_NAMES = ("reals", "complex", "quaternions", "octonions", "matrix2x2", "dual_numbers")

_DIVISION_FLAGS = AlgebraFlags(unital=True, associative=True, division=True, multiplicative_norm=True)


def cayley_dickson_conj(values: np.ndarray) -> np.ndarray:
    """conj(a, b) = (conj a, -b); the identity on the reals."""

    if len(values) == 1:
        return values.copy()
    half = len(values) // 2
    return np.concatenate([cayley_dickson_conj(values[:half]), -values[half:]])


def cayley_dickson_mul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """(a, b)(c, d) = (ac - d*b, da + bc*) on coordinate vectors of length 2^n."""

    if len(left) == 1:
        return left * right
    half = len(left) // 2
    a, b = left[:half], left[half:]
    c, d = right[:half], right[half:]
    first = cayley_dickson_mul(a, c) - cayley_dickson_mul(cayley_dickson_conj(d), b)
    second = cayley_dickson_mul(d, a) + cayley_dickson_mul(b, cayley_dickson_conj(c))
    return np.concatenate([first, second])


def _unit_vector(dim: int, index: int) -> np.ndarray:
    vector = np.array([Fraction(0)] * dim, dtype=object)
    vector[index] = Fraction(1)
    return vector


def _table_from_product(dim: int, product: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
    constants = np.empty((dim, dim, dim), dtype=object)
    for k in range(dim):
        for l in range(dim):
            constants[k, l] = product(_unit_vector(dim, k), _unit_vector(dim, l))
    return constants


def _conjugation_matrix(dim: int) -> List[List[int]]:
    return [[(1 if k == 0 else -1) if k == m else 0 for m in range(dim)] for k in range(dim)]


def _cayley_dickson(name: str, labels: Sequence[str], flags: AlgebraFlags) -> Algebra:
    dim = len(labels)
    generators = {CONJUGATION: _conjugation_matrix(dim)} if dim > 1 else {}
    return Algebra(name, labels, _table_from_product(dim, cayley_dickson_mul), flags, generators)


# Basis of 2x2 real matrices: unit, diagonal reflection, symmetric swap, rotation.
_MATRIX_BASIS = (
    np.array([[1, 0], [0, 1]]),
    np.array([[1, 0], [0, -1]]),
    np.array([[0, 1], [1, 0]]),
    np.array([[0, 1], [-1, 0]]),
)


def _matrix_algebra() -> Algebra:
    # The basis is orthogonal for tr(A B^T) with every tr(E E^T) = 2.
    constants = np.empty((4, 4, 4), dtype=object)
    for k, left in enumerate(_MATRIX_BASIS):
        for l, right in enumerate(_MATRIX_BASIS):
            product = left @ right
            constants[k, l] = [Fraction(int(np.trace(product @ basis.T)), 2) for basis in _MATRIX_BASIS]
    flags = AlgebraFlags(unital=True, associative=True)
    return Algebra("matrix2x2", ["1", "d", "s", "r"], constants, flags)


def _dual_numbers() -> Algebra:
    constants = np.zeros((2, 2, 2), dtype=int)
    constants[0, 0, 0] = 1
    constants[0, 1, 1] = 1
    constants[1, 0, 1] = 1
    flags = AlgebraFlags(unital=True, associative=True)
    return Algebra("dual_numbers", ["1", "eps"], constants, flags, {CONJUGATION: _conjugation_matrix(2)})


_FACTORIES: Dict[str, Callable[[], Algebra]] = {
    "reals": lambda: _cayley_dickson("reals", ["1"], _DIVISION_FLAGS),
    "complex": lambda: _cayley_dickson("complex", ["1", "i"], _DIVISION_FLAGS),
    "quaternions": lambda: _cayley_dickson("quaternions", ["1", "i", "j", "k"], _DIVISION_FLAGS),
    "octonions": lambda: _cayley_dickson(
        "octonions",
        ["1"] + [f"e{index}" for index in range(1, 8)],
        AlgebraFlags(unital=True, associative=False, division=True, multiplicative_norm=True),
    ),
    "matrix2x2": _matrix_algebra,
    "dual_numbers": _dual_numbers,
}


def builtin(name: str) -> Algebra:
    """Return the shared instance of a builtin algebra."""

    key = name.strip().lower()
    if key not in _FACTORIES:
        raise KeyError(f"Unknown builtin algebra '{name}'. Available: {', '.join(BUILTIN_NAMES)}")
    return _shared(key)


@lru_cache(maxsize=None)
def _shared(key: str) -> Algebra:
    logger.debug("Building builtin algebra '%s'", key)
    return _FACTORIES[key]()
