"""Tests for integrating differential specifications."""

import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncalc.algebra import builtin, dump_algebra
from ncalc.calculus import DifferentialSpec, IntegrabilityReport, Verdict, induced_derivative, integrate
from ncalc.config import DifferentialSpecDocument
from ncalc.errors import InexactScalarPath, IntegrationInconsistency, MalformedSpec, NotPolynomial
from ncalc.ncpoly import (
    DirectionSlot,
    MultilinearForm,
    VarSlot,
    Word,
    derivative,
    equal,
    format_expression,
    parse_expression,
    random_polynomial,
)
from ncalc.utils.sampling import random_rational_element


def _build_spec(algebra, patterns, prefactor=1, x0=None, y0=None) -> DifferentialSpec:
    words = tuple(
        Word(prefactor, (None,) * (len(pattern) + 1), tuple(VarSlot() if c == "X" else DirectionSlot(1) for c in pattern))
        for pattern in patterns
    )
    form = MultilinearForm(algebra, 1, words)
    return DifferentialSpec(form, x0 or algebra.zero(), y0 or algebra.zero())


def test_cube_is_recovered(quaternions) -> None:
    solution = integrate(_build_spec(quaternions, ["HXX", "XHX", "XXH"]))
    assert format_expression(solution) == "x^3"


def test_asymmetric_specification_is_rejected(quaternions) -> None:
    report = integrate(_build_spec(quaternions, ["XXH"], prefactor=3))
    assert isinstance(report, IntegrabilityReport)
    assert report.verdict is Verdict.NOT_INTEGRABLE
    assert report.witness.order == 2
    assert report.witness.transposition == (1, 2)
    assert report.to_json()["witness"]["transposition"] == [1, 2]
    assert "h1 <-> h2" in report.format()


def test_same_specification_integrates_in_commutative_algebra(complex_algebra) -> None:
    solution = integrate(_build_spec(complex_algebra, ["XXH"], prefactor=3))
    assert equal(solution, parse_expression("x^3", complex_algebra))


def test_constant_coefficients(quaternions) -> None:
    i, j = quaternions.basis("i"), quaternions.basis("j")
    form = MultilinearForm(quaternions, 1, (Word(1, (i, j), (DirectionSlot(1),)),))
    spec = DifferentialSpec(form, quaternions.zero(), quaternions.one())
    solution = integrate(spec)
    assert equal(solution, parse_expression("1 + i*x*j", quaternions))


def test_induced_derivative_of_cube_spec(quaternions) -> None:
    spec = _build_spec(quaternions, ["HXX", "XHX", "XXH"])
    induced = induced_derivative(spec, 3)
    assert induced.order == 3
    orders = sorted(word.directions for word in induced.words)
    assert orders == sorted(itertools.permutations((1, 2, 3)))
    with pytest.raises(ValueError):
        induced_derivative(spec, 1)


def test_solutions_round_trip(quaternions, rng) -> None:
    for _ in range(3):
        y = random_polynomial(quaternions, 3, rng)
        x0 = random_rational_element(quaternions, rng)
        solution = integrate(DifferentialSpec.of_solution(y, x0))
        assert equal(solution, y)


def test_failed_verification_is_an_error(quaternions, monkeypatch) -> None:
    monkeypatch.setattr("ncalc.calculus.ode.verify_solution", lambda y, spec: False)
    with pytest.raises(IntegrationInconsistency):
        integrate(_build_spec(quaternions, ["HXX", "XHX", "XXH"]))


def test_spec_validation(quaternions) -> None:
    with pytest.raises(NotPolynomial):
        DifferentialSpec(derivative(parse_expression("inv(x)", quaternions), 1), quaternions.zero(), quaternions.zero())
    with pytest.raises(ValueError):
        DifferentialSpec(derivative(parse_expression("x*x", quaternions), 2), quaternions.zero(), quaternions.zero())
    with pytest.raises(InexactScalarPath):
        _build_spec(quaternions, ["H"], x0=quaternions.one().to_real())


def test_spec_from_toml_file(tmp_path) -> None:
    path = tmp_path / "cube.toml"
    path.write_text(
        'algebra = "quaternions"\n'
        'x0 = ["1", "0", "0", "0"]\n'
        'y0 = ["1", "0", "0", "0"]\n'
        '[[words]]\nslots = "HXX"\n'
        '[[words]]\nslots = "XHX"\n'
        '[[words]]\nslots = "XXH"\n'
    )
    spec = DifferentialSpec.from_file(path)
    assert spec.x0 == spec.algebra.one()
    assert equal(integrate(spec), parse_expression("x^3", spec.algebra))


def test_spec_with_constants_and_local_algebra(tmp_path, complex_algebra) -> None:
    (tmp_path / "copy.json").write_text(json.dumps(dump_algebra(complex_algebra).to_dict()))
    payload = {
        "algebra": "copy.json",
        "words": [{"slots": "XH", "constants": ["i", ["0", "1"], "1"], "prefactor": "2"}],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(payload))
    spec = DifferentialSpec.from_file(path)
    assert spec.algebra is not complex_algebra
    solution = integrate(spec)
    assert equal(solution, parse_expression("-x*x", spec.algebra))


def test_malformed_documents(tmp_path) -> None:
    with pytest.raises(MalformedSpec):
        DifferentialSpec.from_file(tmp_path / "missing.toml")

    document = DifferentialSpecDocument.parse(
        {"algebra": "complex", "words": [{"slots": "H", "constants": ["x", "1"]}]}
    )
    with pytest.raises(MalformedSpec):
        DifferentialSpec.from_document(document)

    decimal = DifferentialSpecDocument.parse({"algebra": "complex", "x0": ["0.5", "0"], "words": [{"slots": "H"}]})
    with pytest.raises(InexactScalarPath):
        DifferentialSpec.from_document(decimal)


def test_rational_prefactors(complex_algebra) -> None:
    document = DifferentialSpecDocument.parse(
        {"algebra": "complex", "words": [{"slots": "XH", "prefactor": "1/2"}, {"slots": "HX", "prefactor": "1/2"}]}
    )
    solution = integrate(DifferentialSpec.from_document(document))
    assert equal(solution, parse_expression("1/2*x^2", complex_algebra))
    assert Fraction(1, 2) in {word.prefactor for word in DifferentialSpec.from_document(document).form.words}


@pytest.mark.parametrize("patterns", list(itertools.permutations(["HXX", "XHX", "XXH"])))
def test_word_order_does_not_change_the_solution(quaternions, patterns) -> None:
    assert format_expression(integrate(_build_spec(quaternions, list(patterns)))) == "x^3"


@pytest.mark.parametrize("patterns", list(itertools.permutations(["HXX", "XXH"])))
def test_word_order_does_not_change_the_rejection(quaternions, patterns) -> None:
    report = integrate(_build_spec(quaternions, list(patterns)))
    assert report.verdict is Verdict.NOT_INTEGRABLE
    assert report.witness.transposition == (1, 2)


_QUATERNIONS = builtin("quaternions")


@settings(max_examples=10)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_solutions_are_recovered(seed) -> None:
    rng = np.random.default_rng(seed)
    y = random_polynomial(_QUATERNIONS, 3, rng)
    x0 = random_rational_element(_QUATERNIONS, rng)
    assert equal(integrate(DifferentialSpec.of_solution(y, x0)), y)
