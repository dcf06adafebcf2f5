"""Tests for standard components and solving a linear map for its tensor expansion."""

from fractions import Fraction

import numpy as np
import pytest

from ncalc.algebra import CONJUGATION, builtin
from ncalc.errors import InexactScalarPath, NoRepresentation, UnsupportedForNonassociative
from ncalc.tensor_rep import (
    DELTA,
    ExtendedExpansion,
    LinearMapMatrix,
    StandardComponents,
    apply,
    component_solve_matrix,
    describe_basis,
    left_shift,
    representation_basis,
    right_shift,
    solve_components,
    standard_components,
    standard_components_mul,
    tensor,
    tensor_mul,
    to_matrix,
)
from ncalc.utils.sampling import random_rational_element


def _build_operator(algebra, rng, terms: int = 2):
    operator = tensor(random_rational_element(algebra, rng), random_rational_element(algebra, rng))
    for _ in range(terms - 1):
        operator = operator + tensor(random_rational_element(algebra, rng), random_rational_element(algebra, rng))
    return operator


def test_matrix_reproduces_operator(quaternions, rng) -> None:
    operator = _build_operator(quaternions, rng, terms=3)
    matrix = to_matrix(operator)
    for _ in range(5):
        x = random_rational_element(quaternions, rng)
        assert matrix.apply(x) == apply(operator, x)


def test_component_product_is_composition(quaternions, rng) -> None:
    t1 = _build_operator(quaternions, rng)
    t2 = _build_operator(quaternions, rng)
    product = standard_components_mul(standard_components(t1), standard_components(t2))
    assert product.equals(standard_components(tensor_mul(t1, t2)))


def test_component_product_needs_associativity(octonions) -> None:
    components = standard_components(tensor(octonions.one(), octonions.basis("e3")))
    with pytest.raises(UnsupportedForNonassociative):
        standard_components_mul(components, components)


@pytest.mark.parametrize("name, rank", [("quaternions", 16), ("complex", 2), ("reals", 1)])
def test_solve_matrix_rank(name: str, rank: int) -> None:
    system = component_solve_matrix(builtin(name))
    assert system.rank == rank
    assert system.is_singular == (rank < builtin(name).dim ** 2)


def test_quaternion_conjugation_is_a_sandwich_sum(quaternions) -> None:
    solved = solve_components(LinearMapMatrix.from_generator(quaternions, CONJUGATION))
    expected = np.diag([Fraction(-1, 2)] * 4).astype(object)
    assert solved.equals(StandardComponents(quaternions, {DELTA: expected}))
    assert to_matrix(solved).equals(LinearMapMatrix.from_generator(quaternions, CONJUGATION))


def test_complex_conjugation_needs_its_generator(complex_algebra) -> None:
    solved = solve_components(LinearMapMatrix.from_generator(complex_algebra, CONJUGATION))
    assert isinstance(solved, ExtendedExpansion)
    assert solved.format() == "1·conj"
    assert to_matrix(solved).equals(LinearMapMatrix.from_generator(complex_algebra, CONJUGATION))


def test_solved_components_reproduce_random_maps(quaternions, rng) -> None:
    matrix = LinearMapMatrix(
        quaternions, [[Fraction(int(v), 2) for v in row] for row in rng.integers(-3, 4, size=(4, 4))]
    )
    assert to_matrix(solve_components(matrix)).equals(matrix)


def test_dual_number_basis_is_incomplete(dual_numbers, caplog) -> None:
    with caplog.at_level("WARNING"):
        basis = representation_basis(dual_numbers)
    assert not basis.complete
    assert basis.spanned_rank == 3
    assert basis.generators == (DELTA, CONJUGATION)
    assert "Incomplete representation basis" in caplog.text


def test_map_outside_the_span_has_no_representation(dual_numbers) -> None:
    with pytest.raises(NoRepresentation):
        solve_components(LinearMapMatrix(dual_numbers, [[0, 1], [0, 0]]))


def test_decimal_matrices_are_rejected(complex_algebra) -> None:
    with pytest.raises(InexactScalarPath):
        solve_components(LinearMapMatrix(complex_algebra, [[1.0, 0.0], [0.0, -1.0]]))


def test_representation_basis_description(quaternions, complex_algebra) -> None:
    assert describe_basis(representation_basis(quaternions)) == "{δ}, rank 16"
    assert describe_basis(representation_basis(complex_algebra)) == "{δ, conj}, rank 2"


def test_inexact_tensor_has_no_components(quaternions) -> None:
    with pytest.raises(InexactScalarPath):
        standard_components(tensor(quaternions.one().to_real(), quaternions.one()))


def test_multiplication_matrices_match_the_shifts(quaternions, rng) -> None:
    a = random_rational_element(quaternions, rng)
    left = LinearMapMatrix.left_multiplication(a)
    right = LinearMapMatrix.right_multiplication(a)
    assert left.equals(to_matrix(left_shift(a)))
    assert right.equals(to_matrix(right_shift(a)))
    x = random_rational_element(quaternions, rng)
    assert left.apply(x) == a * x
    assert right.apply(x) == x * a
