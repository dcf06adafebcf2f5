"""Tests for expression parsing and formatting."""

from fractions import Fraction

import pytest

from ncalc.errors import ExpressionSyntaxError
from ncalc.ncpoly import Const, Inverse, Prod, Var, degree, evaluate, format_expression, parse_expression


def test_powers_expand_to_products(quaternions) -> None:
    expression = parse_expression("x^3", quaternions)
    assert expression == Prod((Var(), Var(), Var()))
    assert degree(expression) == 3


def test_runs_of_x_format_as_powers(quaternions) -> None:
    assert format_expression(parse_expression("x*x", quaternions)) == "x^2"
    assert format_expression(parse_expression("i*x*x*j*x", quaternions)) == "i*x^2*j*x"


def test_inverse_and_coordinate_tuples(quaternions) -> None:
    expression = parse_expression("inv(x) + (1,2,0,-1/2)*x", quaternions)
    assert isinstance(expression.terms[0], Inverse)
    assert expression.terms[1].factors[0] == Const(quaternions.element([1, 2, 0, Fraction(-1, 2)]))
    assert degree(expression) is None


def test_formatted_expressions_parse_back(quaternions) -> None:
    x = quaternions.element([1, Fraction(1, 3), -2, 5])
    for text in ("i*x*j - 3/2*x^2 + k", "inv(x)*i - x", "(1 + i)*x*(j - k)"):
        expression = parse_expression(text, quaternions)
        reparsed = parse_expression(format_expression(expression), quaternions)
        assert evaluate(reparsed, x) == evaluate(expression, x)


def test_syntax_errors_report_their_position(quaternions) -> None:
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x + * i", quaternions)
    assert info.value.position == 4


@pytest.mark.parametrize("text", ["x^-1", "q*x", "(1,2)*x", "inv(x", "x $ i"])
def test_malformed_expressions_are_rejected(quaternions, text: str) -> None:
    with pytest.raises(ExpressionSyntaxError):
        parse_expression(text, quaternions)


def test_octonion_labels_are_names(octonions) -> None:
    expression = parse_expression("e1*x*e7", octonions)
    assert format_expression(expression) == "e1*x*e7"
