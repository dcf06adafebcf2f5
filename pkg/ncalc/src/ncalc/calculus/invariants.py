"""Invariant suites behind ``ncalc algebra --check`` and ``ncalc selftest``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ncalc.algebra.builtins import BUILTIN_NAMES, CONJUGATION, builtin
from ncalc.algebra.structure import Algebra, AlgebraElement, associator, commutator, inverse, mul, norm, squared_norm
from ncalc.calculus.numeric_diff import check_derivative
from ncalc.calculus.ode import DifferentialSpec, IntegrabilityReport, integrate
from ncalc.calculus.series import exp, exp_sum_check, shuffle_words
from ncalc.ncpoly.coordinates import equal
from ncalc.ncpoly.expression import X
from ncalc.ncpoly.forms import XSLOT, DirectionSlot, MultilinearForm, Word
from ncalc.ncpoly.parser import format_expression, parse_expression
from ncalc.tensor_rep.components import (
    LinearMapMatrix,
    StandardComponents,
    component_solve_matrix,
    solve_components,
    to_matrix,
)
from ncalc.tensor_rep.operators import DELTA, LEFT_FIRST, RIGHT_FIRST, apply, left_shift, right_shift, tensor
from ncalc.utils.sampling import random_rational_element

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 24
_NORM_SLACK = 1e-9


@dataclass
class InvariantResult:
    subject: str
    name: str
    passed: bool
    checked: int
    detail: str = ""


@dataclass
class InvariantSuite:
    seed: int
    results: List[InvariantResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[InvariantResult]:
        return [result for result in self.results if not result.passed]

    def extend(self, other: "InvariantSuite") -> None:
        self.results.extend(other.results)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [vars(result) for result in self.results], columns=["subject", "name", "passed", "checked", "detail"]
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "results": self.to_frame().to_dict(orient="records"),
        }


def _sample_count(samples: Optional[int]) -> int:
    if samples is None:
        return DEFAULT_SAMPLES
    if samples < 1:
        raise ValueError(f"Invariant checks need at least one sample, got {samples}.")
    return samples


def _sampled(
    subject: str,
    name: str,
    arity: int,
    algebra: Algebra,
    rng: np.random.Generator,
    samples: int,
    predicate: Callable[..., bool],
) -> InvariantResult:
    """Run ``predicate`` on seeded rational tuples and keep the first counterexample."""

    for _ in range(samples):
        arguments = [random_rational_element(algebra, rng) for _ in range(arity)]
        if not predicate(*arguments):
            detail = "counterexample: " + "; ".join(argument.format() for argument in arguments)
            return InvariantResult(subject, name, False, samples, detail)
    return InvariantResult(subject, name, True, samples)


def _bilinear(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> bool:
    s = Fraction(3, 2)
    left = mul(a + b.scale(s), c) == mul(a, c) + mul(b, c).scale(s)
    right = mul(a, b + c.scale(s)) == mul(a, b) + mul(a, c).scale(s)
    return left and right


def _five_term(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement, d: AlgebraElement) -> bool:
    lhs = associator(mul(a, b), c, d) - associator(a, mul(b, c), d) + associator(a, b, mul(c, d))
    rhs = mul(a, associator(b, c, d)) + mul(associator(a, b, c), d)
    return lhs == rhs


def _norm_bound(a: AlgebraElement, b: AlgebraElement) -> bool:
    bound = a.algebra.norm_constant * norm(a).value * norm(b).value
    return norm(mul(a, b)).value <= bound * (1 + _NORM_SLACK)


def _left_shifts(a: AlgebraElement, b: AlgebraElement, x: AlgebraElement) -> bool:
    composed = apply(left_shift(a), apply(left_shift(b), x))
    return composed == apply(left_shift(mul(a, b)), x) - associator(a, b, x)


def _right_shifts(a: AlgebraElement, b: AlgebraElement, x: AlgebraElement) -> bool:
    composed = apply(right_shift(a), apply(right_shift(b), x))
    return composed == apply(right_shift(mul(b, a)), x) + associator(x, b, a)


def _shift_matrices(a: AlgebraElement) -> bool:
    left = to_matrix(left_shift(a)).equals(LinearMapMatrix.left_multiplication(a))
    return left and to_matrix(right_shift(a)).equals(LinearMapMatrix.right_multiplication(a))


def _conventions(a: AlgebraElement, b: AlgebraElement, x: AlgebraElement) -> bool:
    t = tensor(a, b)
    return apply(t, x, LEFT_FIRST) - apply(t, x, RIGHT_FIRST) == associator(a, x, b)


def _inverse_roundtrip(a: AlgebraElement) -> bool:
    if a.is_zero():
        return True
    return mul(a, inverse(a)) == a.algebra.one()


def run_algebra_checks(algebra: Algebra, samples: Optional[int] = None, seed: int = 0) -> InvariantSuite:
    """Exact identities on seeded rational samples, chosen by the algebra's verified flags."""

    samples = _sample_count(samples)
    rng = np.random.default_rng(seed)
    subject = algebra.name
    flags = algebra.flags
    suite = InvariantSuite(seed)
    checks = [
        ("bilinearity", 3, _bilinear),
        ("commutator_antisymmetry", 2, lambda a, b: commutator(a, b) == -commutator(b, a)),
        ("associator_five_term", 4, _five_term),
        ("norm_bound", 2, _norm_bound),
    ]
    if flags.unital:
        one = algebra.one()
        checks += [
            ("unit", 1, lambda a: mul(one, a) == a and mul(a, one) == a),
            ("left_shift_identity", 3, _left_shifts),
            ("right_shift_identity", 3, _right_shifts),
            ("shift_matrices", 1, _shift_matrices),
        ]
    checks.append(("convention_difference", 3, _conventions))
    if flags.associative:
        checks.append(("associativity", 3, lambda a, b, c: associator(a, b, c).is_zero()))
    if flags.multiplicative_norm:
        checks.append(
            ("multiplicative_norm", 2, lambda a, b: squared_norm(mul(a, b)) == squared_norm(a) * squared_norm(b))
        )
    if flags.division:
        checks.append(("division", 1, _inverse_roundtrip))

    for name, arity, predicate in checks:
        result = _sampled(subject, name, arity, algebra, rng, samples, predicate)
        suite.results.append(result)
        if not result.passed:
            logger.warning("Invariant '%s' failed on '%s': %s", name, subject, result.detail)
    logger.info(
        "Checked %d invariants on '%s': %d failed", len(suite.results), subject, len(suite.failures)
    )
    return suite


def _record(suite: InvariantSuite, subject: str, name: str, check: Callable[[], bool], checked: int = 1) -> None:
    try:
        passed = bool(check())
        detail = ""
    except Exception as exc:  # noqa: BLE001
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    suite.results.append(InvariantResult(subject, name, passed, checked, detail))


def _cubic_spec(algebra: Algebra, pattern_words: List[str], prefactor: int = 1) -> DifferentialSpec:
    words = [
        Word(prefactor, (None,) * (len(pattern) + 1), tuple(XSLOT if c == "X" else DirectionSlot(1) for c in pattern))
        for pattern in pattern_words
    ]
    form = MultilinearForm(algebra, 1, tuple(words))
    return DifferentialSpec(form, algebra.zero(), algebra.zero())


def _calculus_checks(seed: int, samples: int) -> InvariantSuite:
    suite = InvariantSuite(seed)
    quaternions = builtin("quaternions")
    complex_ = builtin("complex")

    for text in ("x*x", "i*x*j", "inv(x)", "x*i*inv(x)", "x*i*x*j*x"):
        expression = parse_expression(text, quaternions)
        _record(
            suite,
            "derivatives",
            f"oracle[{format_expression(expression)}]",
            lambda expression=expression: check_derivative(expression, quaternions, samples, seed).passed,
            samples,
        )

    def conjugation_components() -> bool:
        solved = solve_components(LinearMapMatrix.from_generator(quaternions, CONJUGATION))
        expected = StandardComponents(quaternions, {DELTA: np.diag([Fraction(-1, 2)] * 4).astype(object)})
        return solved.equals(expected)

    _record(suite, "tensor_rep", "rank_quaternions", lambda: component_solve_matrix(quaternions).rank == 16)
    _record(suite, "tensor_rep", "rank_complex", lambda: component_solve_matrix(complex_).rank == 2)
    _record(suite, "tensor_rep", "quaternion_conjugation", conjugation_components)
    _record(
        suite,
        "tensor_rep",
        "complex_conjugation_needs_generator",
        lambda: CONJUGATION in solve_components(LinearMapMatrix.from_generator(complex_, CONJUGATION)).generators,
    )

    def symmetric_example() -> bool:
        solution = integrate(_cubic_spec(quaternions, ["HXX", "XHX", "XXH"]))
        return not isinstance(solution, IntegrabilityReport) and equal(solution, X * X * X, quaternions)

    def asymmetric_example() -> bool:
        report = integrate(_cubic_spec(quaternions, ["XXH"], prefactor=3))
        return isinstance(report, IntegrabilityReport) and report.witness.order == 2

    _record(suite, "ode", "integrate_cube", symmetric_example)
    _record(suite, "ode", "reject_asymmetric", asymmetric_example)

    def euler() -> bool:
        value = exp(complex_.element([0.0, float(np.pi)]), 30).value
        return value.isclose(complex_.element([-1.0, 0.0]), 1e-10)

    _record(suite, "series", "exp_i_pi", euler)
    _record(
        suite,
        "series",
        "exp_sum_noncommuting",
        lambda: not exp_sum_check(quaternions.basis("i"), quaternions.basis("j")).equal,
    )
    _record(suite, "series", "shuffle_counts", lambda: all(len(shuffle_words(n)) == 2**n for n in range(1, 11)), 10)
    return suite


def run_selftest(seed: int = 0, samples: Optional[int] = None) -> InvariantSuite:
    """Algebra invariants for every builtin, then the calculus acceptance checks."""

    samples = _sample_count(samples)
    suite = InvariantSuite(seed)
    for name in BUILTIN_NAMES:
        suite.extend(run_algebra_checks(builtin(name), samples, seed))
    suite.extend(_calculus_checks(seed, samples))
    log = logger.info if suite.passed else logger.warning
    log("Selftest finished: %d checks, %d failed", len(suite.results), len(suite.failures))
    return suite
