"""Finite-dimensional algebras given by structural constants."""
from .builtins import BUILTIN_NAMES, CONJUGATION, builtin
from .loading import dump_algebra, load_algebra, resolve_algebra
from .structure import (
    Algebra,
    AlgebraElement,
    AlgebraFlags,
    NormValue,
    associator,
    commutator,
    inverse,
    left_matrix,
    mul,
    norm,
    right_matrix,
)

__all__ = [
    "Algebra",
    "AlgebraElement",
    "AlgebraFlags",
    "BUILTIN_NAMES",
    "CONJUGATION",
    "NormValue",
    "associator",
    "builtin",
    "commutator",
    "dump_algebra",
    "inverse",
    "left_matrix",
    "load_algebra",
    "mul",
    "norm",
    "resolve_algebra",
    "right_matrix",
]
