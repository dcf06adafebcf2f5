"""Tests for algebra elements, products and flag verification."""

from fractions import Fraction

import numpy as np
import pytest

from ncalc.algebra import Algebra, AlgebraFlags, associator, builtin, commutator, inverse, mul, norm
from ncalc.errors import AlgebraMismatch, FlagContradiction, NotInvertible


def test_quaternion_units_anticommute(quaternions) -> None:
    i, j, k = (quaternions.basis(label) for label in "ijk")
    assert mul(i, j) == k
    assert mul(j, i) == -k
    assert commutator(i, j) == k.scale(2)


def test_exact_inverse_is_rational(complex_algebra) -> None:
    z = complex_algebra.element([3, 4])
    z_inv = inverse(z)
    assert z_inv.format() == "3/25 - 4/25*i"
    assert mul(z, z_inv) == complex_algebra.one()


def test_float_inverse_is_checked_numerically(quaternions) -> None:
    q = quaternions.element([0.5, -1.0, 2.0, 0.25])
    assert (mul(q, inverse(q)) - quaternions.one()).is_zero(1e-12)


@pytest.mark.parametrize(
    "name, coords",
    [("quaternions", [0, 0, 0, 0]), ("dual_numbers", [0, 1]), ("matrix2x2", [1, 1, 0, 0])],
)
def test_singular_elements_raise(name: str, coords) -> None:
    algebra = builtin(name)
    with pytest.raises(NotInvertible):
        inverse(algebra.element(coords))


def test_mixing_algebras_is_rejected(complex_algebra, quaternions) -> None:
    with pytest.raises(AlgebraMismatch):
        mul(complex_algebra.basis("i"), quaternions.basis("i"))
    with pytest.raises(AlgebraMismatch):
        complex_algebra.one() + quaternions.one()


def test_exact_and_float_paths_mix_to_float(quaternions) -> None:
    exact = quaternions.element([1, Fraction(1, 2), 0, 0])
    real = quaternions.element([0.0, 1.0, 0.0, 0.0])
    total = exact + real
    assert not total.is_exact
    assert total.coords[1] == pytest.approx(1.5)


def test_octonions_are_not_associative(octonions) -> None:
    e1, e2, e4 = (octonions.basis(f"e{index}") for index in (1, 2, 4))
    assert not associator(e1, e4, e2).is_zero()
    assert octonions.associator_counterexample() is not None


def test_matrix_basis_products(matrix2x2) -> None:
    d, s, r = (matrix2x2.basis(label) for label in "dsr")
    assert mul(d, s) == r
    assert mul(r, r) == -matrix2x2.one()


def test_declared_flags_are_verified(complex_algebra, matrix2x2) -> None:
    with pytest.raises(FlagContradiction) as info:
        Algebra("fake", ["1", "i"], complex_algebra.constants, AlgebraFlags(unital=False, associative=True))
    assert info.value.flag == "unital"

    with pytest.raises(FlagContradiction) as info:
        Algebra(
            "fake-matrix",
            ["1", "d", "s", "r"],
            matrix2x2.constants,
            AlgebraFlags(unital=True, associative=True, multiplicative_norm=True),
        )
    assert info.value.flag == "multiplicative_norm"


def test_associativity_witness_names_a_basis_triple(octonions) -> None:
    flags = AlgebraFlags(unital=True, associative=True)
    with pytest.raises(FlagContradiction) as info:
        Algebra("not-octonions", octonions.basis_labels, octonions.constants, flags)
    k, l, m = info.value.witness
    triple = [octonions.basis(index) for index in (k, l, m)]
    assert not associator(*triple).is_zero()


def test_format_skips_zero_coordinates(quaternions) -> None:
    q = quaternions.element([0, 1, -2, Fraction(1, 2)])
    assert q.format() == "i - 2*j + 1/2*k"
    assert quaternions.zero().format() == "0"


def test_norm_constant_is_one_for_composition_algebras(quaternions, matrix2x2) -> None:
    assert quaternions.norm_constant == 1.0
    assert matrix2x2.norm_constant >= 1.0
    a = matrix2x2.element([1, 2, -1, 3])
    b = matrix2x2.element([0, 1, 1, -2])
    assert norm(mul(a, b)).value <= matrix2x2.norm_constant * norm(a).value * norm(b).value + 1e-12


def test_elements_are_immutable(quaternions) -> None:
    q = quaternions.one()
    with pytest.raises(ValueError):
        q.coords[0] = Fraction(2)
    assert isinstance(q.coords, np.ndarray)
