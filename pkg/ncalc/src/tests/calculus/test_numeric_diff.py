"""Tests for the finite-difference oracle."""

import numpy as np
import pytest

from ncalc.calculus import NumericMap, check_derivative, fd_differential, infinitesimal_order, jacobian
from ncalc.config import NumericConfig
from ncalc.errors import AlgebraMismatch, EvaluationFailure
from ncalc.ncpoly import parse_expression
from ncalc.utils.sampling import random_real_element, random_unit_direction


def test_square_has_vanishing_differential_on_anticommuting_units(quaternions) -> None:
    f = NumericMap.from_expression(parse_expression("x*x", quaternions))
    result = fd_differential(f, quaternions.basis("i"), quaternions.basis("j"))
    assert result.converged
    assert result.value.is_zero(1e-8)


def test_inverse_differential_on_complex_numbers(complex_algebra) -> None:
    f = NumericMap.from_expression(parse_expression("inv(x)", complex_algebra))
    result = fd_differential(f, complex_algebra.element([1, 1]), complex_algebra.one())
    np.testing.assert_allclose(result.value.coords, [0.0, 0.5], atol=1e-8)


def test_jacobian_of_square(complex_algebra) -> None:
    f = NumericMap.from_expression(parse_expression("x*x", complex_algebra))
    result = jacobian(f, complex_algebra.element([1.5, 0.5]))
    np.testing.assert_allclose(result.matrix, [[3.0, -1.0], [1.0, 3.0]], atol=1e-8)
    assert list(result.to_frame().columns) == ["1", "i"]


def test_jacobian_of_conjugation(complex_algebra) -> None:
    f = NumericMap.from_generator(complex_algebra, "conj")
    result = jacobian(f, complex_algebra.element([0.3, -2.0]))
    np.testing.assert_allclose(result.matrix, np.diag([1.0, -1.0]), atol=1e-10)


def test_numeric_maps_combine_pointwise(quaternions) -> None:
    square = NumericMap.from_expression(parse_expression("x*x", quaternions))
    identity = NumericMap.from_generator(quaternions, "identity")
    x = quaternions.element([0.5, 1.0, 0.0, -1.0])
    np.testing.assert_allclose((square + identity)(x).coords, (x * x + x).coords)
    np.testing.assert_allclose((square * identity)(x).coords, (x * x * x).coords)


def test_numeric_map_errors(quaternions, complex_algebra) -> None:
    f = NumericMap.from_expression(parse_expression("inv(x)", quaternions))
    with pytest.raises(EvaluationFailure):
        f(quaternions.zero())
    with pytest.raises(AlgebraMismatch):
        f(complex_algebra.one())


@pytest.mark.parametrize("text", ["x*x", "i*x*j", "inv(x)", "x*i*inv(x)", "x*i*x*j*x"])
def test_symbolic_derivatives_match_finite_differences(quaternions, text: str) -> None:
    report = check_derivative(parse_expression(text, quaternions), samples=8, seed=3)
    assert report.passed, report.samples
    assert len(report.samples) == 8


def test_check_derivative_is_reproducible(octonions) -> None:
    p = parse_expression("e1*x*e2*x", octonions)
    first = check_derivative(p, samples=4, seed=11)
    second = check_derivative(p, samples=4, seed=11)
    assert first.samples["x"].tolist() == second.samples["x"].tolist()
    assert first.to_json()["passed"]


def test_tolerance_comes_from_config(quaternions) -> None:
    config = NumericConfig(relative_tolerance=1e-3, samples=5)
    report = check_derivative(parse_expression("x*x*x", quaternions), config=config)
    assert report.relative_tolerance == 1e-3
    assert len(report.samples) == 5


def test_check_derivative_sample_count_and_seed_defaults(quaternions) -> None:
    p = parse_expression("x*i*x", quaternions)
    with pytest.raises(ValueError):
        check_derivative(p, samples=0)
    assert check_derivative(p, samples=2).seed == NumericConfig().random_seed
    assert check_derivative(p, samples=2, config=NumericConfig(random_seed=7)).seed == 7


def test_richardson_residual_shrinks_quadratically(quaternions) -> None:
    f = NumericMap.from_expression(parse_expression("x*x*x", quaternions))
    x, h = quaternions.element([1.0, 1.0, 0.0, 0.0]), quaternions.basis("j")
    coarse = fd_differential(f, x, h, NumericConfig(steps=(1e-2, 1e-3)))
    fine = fd_differential(f, x, h, NumericConfig(steps=(1e-3, 1e-4)))
    assert coarse.residual == pytest.approx(1e-6, rel=1e-3)
    assert np.log10(coarse.residual / fine.residual) >= 1.8


def test_finite_differences_follow_sum_and_product_rules(quaternions, rng) -> None:
    f = NumericMap.from_expression(parse_expression("x*i*x", quaternions))
    g = NumericMap.from_expression(parse_expression("j*x + 1", quaternions))
    x = random_real_element(quaternions, rng)
    h = random_unit_direction(quaternions, rng)
    df, dg = fd_differential(f, x, h).value, fd_differential(g, x, h).value
    np.testing.assert_allclose(fd_differential(f + g, x, h).value.coords, (df + dg).coords, atol=1e-8)
    product = df * g(x) + f(x) * dg
    np.testing.assert_allclose(fd_differential(f * g, x, h).value.coords, product.coords, atol=1e-8)


def test_jacobian_applied_to_a_direction_matches_the_differential(octonions, rng) -> None:
    f = NumericMap.from_expression(parse_expression("e1*x*e2*x + x", octonions))
    x = random_real_element(octonions, rng)
    matrix = jacobian(f, x)
    assert matrix.converged
    for _ in range(3):
        h = random_unit_direction(octonions, rng)
        np.testing.assert_allclose(matrix.apply(h).coords, fd_differential(f, x, h).value.coords, atol=1e-8)


def test_infinitesimal_order_of_shifted_cube(quaternions) -> None:
    f = NumericMap.from_expression(parse_expression("(x - i)*(x - i)*(x - i)", quaternions))
    x0, h = quaternions.basis("i"), quaternions.element([1, 1, 0, 1])
    assert infinitesimal_order(f, x0, h, 2).vanishing
    result = infinitesimal_order(f, x0, h, 3)
    assert not result.vanishing
    assert result.ratios[-1] == pytest.approx(np.sqrt(3) ** 3, rel=1e-6)


def test_infinitesimal_order_of_square_at_zero(quaternions) -> None:
    f = NumericMap.from_expression(parse_expression("x*x", quaternions))
    h = quaternions.element([0, 1, 2, 0])
    assert infinitesimal_order(f, quaternions.zero(), h, 1).vanishing
    assert not infinitesimal_order(f, quaternions.zero(), h, 2).vanishing
    assert not infinitesimal_order(f, quaternions.one(), h, 0).vanishing
    with pytest.raises(ValueError):
        infinitesimal_order(f, quaternions.zero(), h, 1, steps=(1e-2, 1e-1))
    with pytest.raises(ValueError):
        infinitesimal_order(f, quaternions.zero(), h, -1)
