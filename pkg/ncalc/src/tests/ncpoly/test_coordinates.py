"""Tests for exact coordinate expansion, equality and symmetry classes."""

from ncalc.ncpoly import coordinates
from ncalc.ncpoly import (
    DirectionSlot,
    MultilinearForm,
    SymmetryClass,
    VarSlot,
    Word,
    asymmetry_witness,
    evaluate,
    canonical_expand,
    derivative,
    equal,
    parse_expression,
    symmetry_class,
)


def _build_form(algebra, patterns, prefactor=1) -> MultilinearForm:
    words = []
    for pattern, sign in patterns:
        slots = tuple(VarSlot() if c == "x" else DirectionSlot(int(c)) for c in pattern)
        words.append(Word(prefactor * sign, (None,) * (len(slots) + 1), slots))
    return MultilinearForm(algebra, max(int(c) for pattern, _ in patterns for c in pattern if c != "x"), tuple(words))


def test_commutative_algebra_identifies_word_orders(complex_algebra, quaternions) -> None:
    assert equal(parse_expression("x*i", complex_algebra), parse_expression("i*x", complex_algebra))
    assert not equal(parse_expression("x*i", quaternions), parse_expression("i*x", quaternions))


def test_sympy_view_of_complex_square(complex_algebra) -> None:
    real, imaginary = canonical_expand(parse_expression("x*x", complex_algebra)).to_sympy()
    assert str(real) == "x0**2 - x1**2"
    assert str(imaginary) == "2*x0*x1"


def test_expansion_evaluates_like_the_expression(quaternions) -> None:
    p = parse_expression("i*x*j*x - 3*x + k", quaternions)
    x = quaternions.element([1, 2, -1, 3])
    assert canonical_expand(p).evaluate(x) == evaluate(p, x)


def test_skew_and_asymmetric_forms(quaternions, complex_algebra) -> None:
    commutator_form = _build_form(quaternions, [("12", 1), ("21", -1)])
    assert symmetry_class(commutator_form) is SymmetryClass.SKEW
    assert symmetry_class(_build_form(complex_algebra, [("12", 1), ("21", -1)])) is SymmetryClass.SYMMETRIC

    induced = _build_form(quaternions, [("2x1", 1), ("x21", 1)], prefactor=3)
    assert symmetry_class(induced) is SymmetryClass.NEITHER
    witness = asymmetry_witness(induced)
    assert witness.transposition == (1, 2)
    assert witness.order == 2
    assert not witness.expansion.is_zero()


def test_derivatives_of_polynomials_have_no_witness(quaternions) -> None:
    form = derivative(parse_expression("x*i*x*x", quaternions), 2)
    assert asymmetry_witness(form) is None


def test_repeated_expansion_reuses_word_tensors(octonions) -> None:
    p = parse_expression("e1*x*e2*x*e3*x + x*e4*x", octonions)
    first = canonical_expand(derivative(p, 2))
    hits = coordinates._word_tensor.cache_info().hits
    second = canonical_expand(derivative(p, 2))
    assert coordinates._word_tensor.cache_info().hits > hits
    assert first == second
    assert equal(derivative(p, 2), derivative(p, 2))
