"""Exact linear algebra over the rationals backed by sympy's DomainMatrix."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def to_qq(value: Fraction | int):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_domain_matrix(matrix: np.ndarray) -> DomainMatrix:
    """Convert a 2-d array of exact scalars to a DomainMatrix over QQ."""

    array = np.asarray(matrix, dtype=object)
    if array.ndim != 2:
        raise ValueError(f"Expected a 2-d matrix, got shape {array.shape}.")
    rows = [[to_qq(entry) for entry in row] for row in array]
    return DomainMatrix(rows, array.shape, QQ)


def exact_rank(matrix: np.ndarray) -> int:
    """Rank computed by exact elimination."""

    return int(to_domain_matrix(matrix).rank())


def exact_solve(matrix: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """Return a particular solution of ``matrix @ x = rhs`` or None when inconsistent.

    Free variables are set to zero, so the solution only uses pivot columns.
    """

    array = np.asarray(matrix, dtype=object)
    target = np.asarray(rhs, dtype=object).reshape(-1, 1)
    if array.shape[0] != target.shape[0]:
        raise ValueError(
            f"Right-hand side has {target.shape[0]} rows, matrix has {array.shape[0]}."
        )
    n_cols = array.shape[1]
    reduced, pivots = to_domain_matrix(np.hstack([array, target])).rref()
    if n_cols in pivots:
        return None
    dense = reduced.to_Matrix()
    solution = np.array([Fraction(0)] * n_cols, dtype=object)
    for row, column in enumerate(pivots):
        value = dense[row, n_cols]
        solution[column] = Fraction(int(value.p), int(value.q))
    return solution
