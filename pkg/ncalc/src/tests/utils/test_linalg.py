"""Tests for exact rank and particular solutions over the rationals."""

from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from ncalc.utils.linalg import exact_rank, exact_solve


def _matrix(rows) -> np.ndarray:
    return np.array([[Fraction(v) for v in row] for row in rows], dtype=object)


def test_exact_rank_detects_dependent_rows() -> None:
    assert exact_rank(_matrix([[1, 2], [2, 4]])) == 1
    assert exact_rank(_matrix([[1, 0], [0, 1]])) == 2


def test_exact_solve_returns_rational_solution() -> None:
    solution = exact_solve(_matrix([[2, 0], [0, 4]]), _matrix([[1], [1]]))
    assert list(solution) == [Fraction(1, 2), Fraction(1, 4)]


def test_exact_solve_reports_inconsistent_systems() -> None:
    assert exact_solve(_matrix([[1, 1], [1, 1]]), _matrix([[1], [2]])) is None


def test_exact_solve_sets_free_variables_to_zero() -> None:
    solution = exact_solve(_matrix([[1, 1]]), _matrix([[3]]))
    assert list(solution) == [Fraction(3), Fraction(0)]


small = st.integers(min_value=-4, max_value=4)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_exact_solve_solution_satisfies_system(rows, x) -> None:
    matrix = _matrix(rows)
    rhs = matrix.dot(np.array([Fraction(v) for v in x], dtype=object))
    solution = exact_solve(matrix, rhs)
    assert solution is not None
    assert list(matrix.dot(solution)) == list(rhs)
