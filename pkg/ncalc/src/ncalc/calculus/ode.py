"""Integration of differential specifications dy = F(x)(h) by Taylor reconstruction.

A specification is integrable only if every induced higher derivative is symmetric in its
arguments; the first transposition that breaks symmetry is reported as the witness.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from ncalc.algebra.loading import resolve_algebra
from ncalc.algebra.structure import Algebra, AlgebraElement
from ncalc.config.ode_spec import ConstantLiteral, DifferentialSpecDocument, WordEntry
from ncalc.errors import (
    ExpressionSyntaxError,
    InexactScalarPath,
    IntegrationInconsistency,
    MalformedSpec,
    NotPolynomial,
)
from ncalc.ncpoly.coordinates import AsymmetryWitness, asymmetry_witness, equal
from ncalc.ncpoly.expression import NcExpression, degree, evaluate
from ncalc.ncpoly.forms import XSLOT, DirectionSlot, MultilinearForm, Word, derivative, differentiate
from ncalc.ncpoly.parser import format_expression, parse_expression
from ncalc.ncpoly.taylor import taylor_from_forms
from ncalc.utils.rationals import parse_rational, parse_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DifferentialSpec:
    """The equation ∂y(x)(h) = F(x)(h) with y(x0) = y0."""

    form: MultilinearForm
    x0: AlgebraElement
    y0: AlgebraElement

    def __post_init__(self) -> None:
        if self.form.order != 1:
            raise ValueError(f"A differential specification needs an order-1 form, got order {self.form.order}.")
        if not self.form.is_polynomial:
            raise NotPolynomial("Right-hand sides containing inv(...) cannot be integrated.")
        algebra = self.form.algebra
        for name, value in (("x0", self.x0), ("y0", self.y0)):
            if value.algebra is not algebra:
                raise ValueError(f"{name} belongs to '{value.algebra.name}', not '{algebra.name}'.")
            if not value.is_exact:
                raise InexactScalarPath(f"{name} must have rational coordinates for exact integration.")
        for word in self.form.words:
            if any(constant is not None and not constant.is_exact for constant in word.constants):
                raise InexactScalarPath("Word constants must be rational for exact integration.")

    @property
    def algebra(self) -> Algebra:
        return self.form.algebra

    @classmethod
    def of_solution(cls, y: NcExpression, x0: AlgebraElement) -> "DifferentialSpec":
        """The specification ∂y with the initial value y(x0)."""

        return cls(derivative(y, 1, x0.algebra), x0, evaluate(y, x0))

    @classmethod
    def from_document(
        cls, document: DifferentialSpecDocument, base_dir: Optional[Path] = None
    ) -> "DifferentialSpec":
        source = document.algebra
        if isinstance(source, str) and base_dir is not None and (base_dir / source).exists():
            source = str(base_dir / source)
        algebra = resolve_algebra(source)
        words = tuple(_word_from_entry(entry, algebra) for entry in document.words)
        form = MultilinearForm(algebra, 1, words).simplified()
        return cls(form, _point(document.x0, algebra, "x0"), _point(document.y0, algebra, "y0"))

    @classmethod
    def from_file(cls, path: Union[Path, str]) -> "DifferentialSpec":
        path = Path(path)
        if not path.exists():
            raise MalformedSpec(f"Differential spec file not found: {path}")
        return cls.from_document(DifferentialSpecDocument.from_file(path), base_dir=path.parent)


def _point(values: Optional[Sequence[str]], algebra: Algebra, name: str) -> AlgebraElement:
    if values is None:
        return algebra.zero()
    try:
        return algebra.element(parse_vector(list(values)))
    except ValueError as exc:
        raise MalformedSpec(f"Invalid {name}: {exc}") from exc


def _constant(literal: ConstantLiteral, algebra: Algebra) -> AlgebraElement:
    if isinstance(literal, list):
        try:
            return algebra.element(parse_vector(literal))
        except ValueError as exc:
            raise MalformedSpec(f"Invalid word constant {literal}: {exc}") from exc
    try:
        expression = parse_expression(literal, algebra)
    except ExpressionSyntaxError as exc:
        raise MalformedSpec(f"Invalid word constant '{literal}': {exc}") from exc
    if degree(expression) != 0:
        raise MalformedSpec(f"Word constant '{literal}' must not depend on x.")
    return evaluate(expression, algebra.zero())


def _word_from_entry(entry: WordEntry, algebra: Algebra) -> Word:
    slots = tuple(XSLOT if letter == "X" else DirectionSlot(1) for letter in entry.slots)
    if entry.constants is None:
        constants = (None,) * (len(slots) + 1)
    else:
        constants = tuple(_constant(literal, algebra) for literal in entry.constants)
    try:
        prefactor = parse_rational(entry.prefactor)
    except ValueError as exc:
        raise MalformedSpec(f"Invalid prefactor '{entry.prefactor}': {exc}") from exc
    return Word(prefactor, constants, slots)


class Verdict(str, Enum):
    INTEGRABLE = "integrable"
    NOT_INTEGRABLE = "not_integrable"


@dataclass(frozen=True)
class IntegrabilityReport:
    verdict: Verdict
    witness: Optional[AsymmetryWitness] = None

    def to_json(self) -> Dict[str, object]:
        record: Dict[str, object] = {"verdict": self.verdict.value}
        if self.witness is not None:
            record["witness"] = {
                "order": self.witness.order,
                "transposition": list(self.witness.transposition),
                "difference": self.witness.difference.to_json(),
                "difference_text": self.witness.difference.format(),
            }
        return record

    def format(self) -> str:
        if self.witness is None:
            return self.verdict.value
        i, j = self.witness.transposition
        return (
            f"{self.verdict.value}: the order-{self.witness.order} derivative changes under h{i} <-> h{j}; "
            f"difference {self.witness.difference.format()}"
        )


def induced_derivative(spec: DifferentialSpec, m: int) -> MultilinearForm:
    """∂^(m-1) of F in x, the new directions being h2..hm."""

    if m < 2:
        raise ValueError(f"Induced derivatives start at order 2, got {m}.")
    form = spec.form
    for _ in range(m - 1):
        form = differentiate(form)
    return form.simplified()


def _derivative_chain(spec: DifferentialSpec) -> List[MultilinearForm]:
    chain = [spec.form]
    for _ in range(spec.form.x_degree):
        chain.append(differentiate(chain[-1]).simplified())
    return chain


def integrate(spec: DifferentialSpec) -> Union[NcExpression, IntegrabilityReport]:
    """The polynomial y with ∂y = F and y(x0) = y0, or a report naming the failing symmetry."""

    chain = _derivative_chain(spec)
    for candidate in chain[1:]:
        witness = asymmetry_witness(candidate)
        if witness is not None:
            logger.info(
                "Specification is not integrable: order-%d derivative is asymmetric under %s",
                witness.order,
                witness.transposition,
            )
            return IntegrabilityReport(Verdict.NOT_INTEGRABLE, witness)
        logger.debug("Order-%d induced derivative is symmetric", candidate.order)

    solution = taylor_from_forms(chain, spec.x0, spec.y0)
    if not verify_solution(solution, spec):
        raise IntegrationInconsistency(
            f"Reconstructed {format_expression(solution)} does not satisfy the specification "
            "although every induced derivative is symmetric."
        )
    logger.info("Integrated specification to y = %s", format_expression(solution))
    return solution


def verify_solution(y: NcExpression, spec: DifferentialSpec) -> bool:
    """∂y equals F after exact coordinate expansion, and y(x0) = y0."""

    if evaluate(y, spec.x0) != spec.y0:
        return False
    return equal(derivative(y, 1, spec.algebra), spec.form)
