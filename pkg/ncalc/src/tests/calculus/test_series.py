"""Tests for the exponent series, the exp(a + b) check and shuffle words."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncalc.algebra import builtin, commutator, mul, norm
from ncalc.calculus import (
    diagonal_shuffle_value,
    exp,
    exp_layer_discrepancy,
    exp_series,
    exp_sum_check,
    remainder_bound,
    shuffle_form,
    shuffle_words,
)
from ncalc.config import SeriesConfig
from ncalc.errors import InsufficientTruncation
from ncalc.ncpoly import eval_form
from ncalc.utils.sampling import random_rational_element


def test_exact_exponent_at_low_order(complex_algebra) -> None:
    result = exp(complex_algebra.basis("i"), 4, exact=True)
    assert result.value == complex_algebra.element([Fraction(13, 24), Fraction(5, 6)])
    assert result.remainder_bound == pytest.approx(math.e / 120)


def test_euler_identity(complex_algebra) -> None:
    result = exp(complex_algebra.element([0.0, math.pi]), 30)
    np.testing.assert_allclose(result.value.coords, [-1.0, 0.0], atol=1e-10)
    assert result.remainder_bound < 1e-10


def test_quaternion_exponent_of_pure_unit(quaternions) -> None:
    value = exp(quaternions.basis("j").scale(0.5)).value
    np.testing.assert_allclose(value.coords, [math.cos(0.5), 0.0, math.sin(0.5), 0.0], atol=1e-12)


def test_remainder_bound_properties(octonions) -> None:
    assert remainder_bound(octonions.zero(), 5) == 0.0
    x = octonions.element([1, 1, 0, 0, 0, 0, 0, 0])
    assert remainder_bound(x, 20) < remainder_bound(x, 10)


def test_series_evaluates_like_the_exponent(quaternions) -> None:
    x = quaternions.element([Fraction(1, 2), 1, 0, Fraction(-1, 3)])
    series = exp_series(quaternions, 8)
    assert series.evaluate(x) == exp(x, 8, exact=True).value
    assert series.remainder_bound(x) == remainder_bound(x, 8)


def test_exp_sum_detects_noncommuting_arguments(quaternions, complex_algebra) -> None:
    report = exp_sum_check(quaternions.basis("i"), quaternions.basis("j"))
    assert not report.equal
    assert report.commutator_norm == pytest.approx(2.0)
    assert report.difference_norm > 1e-3

    commuting = exp_sum_check(complex_algebra.element([Fraction(1, 2), 1]), complex_algebra.basis("i"))
    assert commuting.equal
    assert commuting.to_json()["equal"]


def test_exp_sum_refuses_short_series(quaternions) -> None:
    with pytest.raises(InsufficientTruncation):
        exp_sum_check(quaternions.basis("i"), quaternions.basis("i"), order=5)
    with pytest.raises(InsufficientTruncation):
        exp_sum_check(
            quaternions.basis("i"), quaternions.basis("k"), config=SeriesConfig(truncation_order=6)
        )


def test_layer_discrepancy_starts_with_the_commutator(quaternions, rng) -> None:
    a = random_rational_element(quaternions, rng)
    b = random_rational_element(quaternions, rng)
    layers = exp_layer_discrepancy(a, b, 3)
    assert layers[0].is_zero() and layers[1].is_zero()
    assert layers[2] == commutator(a, b).scale(Fraction(1, 2))
    expected = (
        mul(mul(a, a), b).scale(2)
        + mul(mul(a, b), b).scale(2)
        - mul(mul(a, b), a)
        - mul(mul(b, a), a)
        - mul(mul(b, a), b)
        - mul(mul(b, b), a)
    ).scale(Fraction(1, 6))
    assert layers[3] == expected


def test_layer_discrepancy_vanishes_for_commuting_arguments(complex_algebra) -> None:
    layers = exp_layer_discrepancy(complex_algebra.element([1, 2]), complex_algebra.element([-3, 1]), 5)
    assert all(layer.is_zero() for layer in layers)


def test_shuffle_words_enumerate_every_split() -> None:
    assert [word.letters for word in shuffle_words(1)] == [("y", "h1"), ("h1", "y")]
    words = shuffle_words(3)
    assert len(words) == 8
    assert str(words[0]) == "y·h3·h2·h1"
    assert str(words[-1]) == "h1·h2·h3·y"
    assert len({word.letters for word in shuffle_words(6)}) == 64
    with pytest.raises(ValueError):
        shuffle_words(0)


def test_diagonal_shuffle_value(complex_algebra, dual_numbers) -> None:
    i = complex_algebra.basis("i")
    assert diagonal_shuffle_value(1, i) == i.scale(2)
    assert diagonal_shuffle_value(2, i) == complex_algebra.one().scale(-4)
    assert diagonal_shuffle_value(2, dual_numbers.basis("eps")).is_zero()


def test_shuffle_form_places_y_between_runs(quaternions) -> None:
    y = quaternions.basis("k")
    h1, h2 = quaternions.basis("i"), quaternions.basis("j")
    value = eval_form(shuffle_form(2, y), quaternions.zero(), h1, h2)
    expected = mul(mul(y, h2), h1) + mul(mul(h1, y), h2) + mul(mul(h2, y), h1) + mul(mul(h1, h2), y)
    assert value == expected


def test_consecutive_truncations_shrink_like_the_ratio_test(quaternions) -> None:
    x = quaternions.element([Fraction(1, 2), 1, Fraction(-1, 3), 2])
    radius = norm(x).value
    previous = norm(exp(x, 1, exact=True).value - exp(x, 0, exact=True).value).value
    for n in range(1, 11):
        step = norm(exp(x, n + 1, exact=True).value - exp(x, n, exact=True).value).value
        assert step == pytest.approx(previous * radius / (n + 1), rel=1e-9)
        assert step <= previous * radius / (n + 1) * (1 + 1e-9)
        previous = step


_COMPLEX = builtin("complex")
_unit_coords = st.fractions(min_value=-1, max_value=1, max_denominator=4)
_complex_numbers = st.lists(_unit_coords, min_size=2, max_size=2).map(_COMPLEX.element)


@settings(max_examples=50)
@given(_complex_numbers, _complex_numbers)
def test_exp_sum_holds_for_commuting_pairs(a, b) -> None:
    report = exp_sum_check(a, b)
    assert report.equal
    assert report.commutator_norm == pytest.approx(0.0, abs=1e-12)


def test_exp_sum_holds_for_powers_of_one_quaternion(quaternions) -> None:
    a = quaternions.element([0, Fraction(1, 2), Fraction(1, 3), -1])
    for b in (a.scale(2), mul(a, a).scale(Fraction(1, 4)), quaternions.one().scale(-1)):
        assert exp_sum_check(a, b).equal


@pytest.mark.parametrize("n", range(1, 11))
def test_shuffle_words_put_the_last_index_next_to_y(n: int) -> None:
    words = shuffle_words(n)
    assert len(words) == 2**n
    assert len({word.letters for word in words}) == 2**n
    for word in words:
        assert list(word.left) == sorted(word.left)
        assert list(word.right) == sorted(word.right, reverse=True)
        assert sorted(word.left + word.right) == list(range(1, n + 1))
        position = word.letters.index("y")
        neighbours = word.letters[max(position - 1, 0):position] + word.letters[position + 1:position + 2]
        assert f"h{n}" in neighbours
