"""Finite-difference differentials and Jacobians used as an oracle for symbolic derivatives."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ncalc.algebra.structure import Algebra, AlgebraElement, mul, norm
from ncalc.config.numeric import NumericConfig
from ncalc.errors import AlgebraMismatch, EvaluationFailure
from ncalc.ncpoly.expression import NcExpression, algebra_of, evaluate
from ncalc.ncpoly.forms import derivative, eval_form
from ncalc.ncpoly.parser import format_expression
from ncalc.tensor_rep.components import LinearMapMatrix
from ncalc.tensor_rep.operators import DELTA
from ncalc.utils.sampling import random_real_element, random_unit_direction

logger = logging.getLogger(__name__)

MIN_SAMPLE_NORM = 0.5
_MAX_DRAWS_PER_SAMPLE = 50


@dataclass(frozen=True)
class NumericMap:
    """A map A -> A evaluated on the floating path."""

    algebra: Algebra
    function: Callable[[AlgebraElement], AlgebraElement]
    name: str = "f"

    @classmethod
    def from_expression(cls, p: NcExpression, algebra: Optional[Algebra] = None) -> "NumericMap":
        algebra = algebra or algebra_of(p)
        if algebra is None:
            raise ValueError(f"Cannot infer the algebra of '{format_expression(p)}'; pass it explicitly.")
        return cls(algebra, lambda x: evaluate(p, x), format_expression(p))

    @classmethod
    def from_matrix(cls, matrix: LinearMapMatrix, name: str = "linear map") -> "NumericMap":
        return cls(matrix.algebra, matrix.apply, name)

    @classmethod
    def from_generator(cls, algebra: Algebra, generator: str) -> "NumericMap":
        """A registered generator such as ``conj``; ``identity`` and ``delta`` give the identity map."""

        name = DELTA if generator in {"identity", DELTA} else generator
        return cls.from_matrix(LinearMapMatrix.from_generator(algebra, name), generator)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self.algebra:
            raise AlgebraMismatch(f"Map '{self.name}' acts on '{self.algebra.name}', not '{x.algebra.name}'.")
        try:
            value = self.function(x.to_real())
        except EvaluationFailure:
            raise
        except ArithmeticError as exc:
            raise EvaluationFailure(f"Map '{self.name}' failed at {x.format()}: {exc}") from exc
        value = value.to_real()
        if not np.all(np.isfinite(value.coords)):
            raise EvaluationFailure(f"Map '{self.name}' is not finite at {x.format()}.")
        return value

    def __add__(self, other: "NumericMap") -> "NumericMap":
        return NumericMap(self.algebra, lambda x: self(x) + other(x), f"({self.name}) + ({other.name})")

    def __mul__(self, other: "NumericMap") -> "NumericMap":
        return NumericMap(self.algebra, lambda x: mul(self(x), other(x)), f"({self.name})*({other.name})")


@dataclass(frozen=True)
class FiniteDifferenceResult:
    """Richardson-extrapolated differential with its residual estimate."""

    value: AlgebraElement
    residual: float
    converged: bool
    steps: Tuple[float, float]


def central_difference(f: NumericMap, x: AlgebraElement, h: AlgebraElement, t: float) -> AlgebraElement:
    """(f(x + t h) - f(x - t h)) / 2t"""

    x_real, h_real = x.to_real(), h.to_real()
    forward = f(x_real + h_real.scale(t))
    backward = f(x_real - h_real.scale(t))
    return (forward - backward).scale(1.0 / (2.0 * t))


def fd_differential(
    f: NumericMap, x: AlgebraElement, h: AlgebraElement, config: Optional[NumericConfig] = None
) -> FiniteDifferenceResult:
    """Central differences at the coarse and fine steps combined by one Richardson step.

    The residual is the distance between the extrapolated value and the fine-step quotient;
    the result counts as converged when it is below max(rel * |value|, floor).
    """

    config = config or NumericConfig()
    coarse, fine = config.steps
    ratio = (coarse / fine) ** 2
    d_coarse = central_difference(f, x, h, coarse)
    d_fine = central_difference(f, x, h, fine)
    value = (d_fine.scale(ratio) - d_coarse).scale(1.0 / (ratio - 1.0))
    residual = norm(value - d_fine).value
    threshold = max(config.relative_tolerance * norm(value).value, config.absolute_floor)
    converged = residual <= threshold
    if not converged:
        logger.warning(
            "Finite difference of '%s' did not converge at %s: residual %.3e above %.3e",
            f.name,
            x.format(),
            residual,
            threshold,
        )
    return FiniteDifferenceResult(value, residual, converged, (coarse, fine))


@dataclass(frozen=True)
class JacobianMatrix:
    """Real matrix J[i, j] = ∂f^i/∂x^j at a point."""

    algebra: Algebra
    matrix: np.ndarray
    max_residual: float
    converged: bool

    def apply(self, h: AlgebraElement) -> AlgebraElement:
        return self.algebra.element(self.matrix.dot(h.to_real().coords))

    def to_frame(self) -> pd.DataFrame:
        labels = list(self.algebra.basis_labels)
        return pd.DataFrame(self.matrix, index=labels, columns=labels)


def jacobian(f: NumericMap, x: AlgebraElement, config: Optional[NumericConfig] = None) -> JacobianMatrix:
    columns = []
    residuals = []
    converged = True
    for j in range(f.algebra.dim):
        result = fd_differential(f, x, f.algebra.basis(j), config)
        columns.append(result.value.coords)
        residuals.append(result.residual)
        converged = converged and result.converged
    matrix = np.column_stack(columns)
    return JacobianMatrix(f.algebra, matrix, max(residuals, default=0.0), converged)


@dataclass(frozen=True)
class InfinitesimalOrderResult:
    """Ratios |f(x0 + t h)| / t^order along a shrinking sequence of steps."""

    order: int
    steps: Tuple[float, ...]
    ratios: Tuple[float, ...]
    vanishing: bool


def infinitesimal_order(
    f: NumericMap,
    x0: AlgebraElement,
    h: AlgebraElement,
    order: int,
    steps: Tuple[float, ...] = (1e-1, 1e-2, 1e-3),
    config: Optional[NumericConfig] = None,
) -> InfinitesimalOrderResult:
    """Whether f(x0 + t h) is o(t^order) as t -> 0.

    Each ratio must shrink by at least sqrt(t_k / t_{k-1}) against the previous one, or sit below
    the absolute floor of the config.
    """

    if order < 0:
        raise ValueError(f"Order must be non-negative, got {order}.")
    if len(steps) < 2 or any(later >= earlier for earlier, later in zip(steps, steps[1:])) or steps[-1] <= 0:
        raise ValueError(f"Steps must be a decreasing sequence of at least two positive values, got {steps}.")
    config = config or NumericConfig()
    x_real, h_real = x0.to_real(), h.to_real()
    ratios = tuple(norm(f(x_real + h_real.scale(t))).value / t**order for t in steps)
    vanishing = all(
        ratio <= max(previous * np.sqrt(t / t_previous), config.absolute_floor)
        for previous, ratio, t_previous, t in zip(ratios, ratios[1:], steps, steps[1:])
    )
    logger.debug("Order %d ratios of '%s' at %s: %s", order, f.name, x0.format(), ratios)
    return InfinitesimalOrderResult(order, tuple(steps), ratios, vanishing)


@dataclass
class DerivativeCheckReport:
    """Per-sample comparison of the symbolic first derivative against finite differences."""

    expression: str
    algebra: str
    seed: int
    relative_tolerance: float
    samples: pd.DataFrame = field(repr=False)
    max_error: float
    passed: bool

    def to_json(self) -> Dict[str, object]:
        return {
            "expression": self.expression,
            "algebra": self.algebra,
            "seed": self.seed,
            "relative_tolerance": self.relative_tolerance,
            "max_error": self.max_error,
            "passed": self.passed,
            "samples": self.samples.to_dict(orient="records"),
        }


def _draw_point(f: NumericMap, rng: np.random.Generator) -> AlgebraElement:
    for _ in range(_MAX_DRAWS_PER_SAMPLE):
        x = random_real_element(f.algebra, rng)
        if norm(x).value < MIN_SAMPLE_NORM:
            continue
        try:
            f(x)
        except EvaluationFailure:
            continue
        return x
    raise EvaluationFailure(f"Could not find a sample point where '{f.name}' evaluates.")


def check_derivative(
    p: NcExpression,
    algebra: Optional[Algebra] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    config: Optional[NumericConfig] = None,
) -> DerivativeCheckReport:
    """Compare eval_form(∂p, x, h) with fd_differential at seeded random points and unit directions.

    ``samples`` and ``seed`` fall back to the config when omitted.
    """

    config = config or NumericConfig()
    samples = config.samples if samples is None else samples
    if samples < 1:
        raise ValueError(f"check_derivative needs at least one sample, got {samples}.")
    seed = config.random_seed if seed is None else seed
    algebra = algebra or algebra_of(p)
    if algebra is None:
        raise ValueError(f"Cannot infer the algebra of '{format_expression(p)}'; pass it explicitly.")
    f = NumericMap.from_expression(p, algebra)
    first = derivative(p, 1, algebra)
    rng = np.random.default_rng(seed)

    records: List[Dict[str, object]] = []
    for index in range(samples):
        x = _draw_point(f, rng)
        h = random_unit_direction(algebra, rng)
        symbolic = eval_form(first, x, h)
        numeric = fd_differential(f, x, h, config)
        difference = norm(symbolic - numeric.value).value
        scale = norm(symbolic).value
        error = difference / scale if scale > config.absolute_floor else difference
        passed = difference <= max(config.relative_tolerance * scale, config.absolute_floor)
        records.append(
            {
                "sample": index,
                "x": [float(value) for value in x.coords],
                "h": [float(value) for value in h.coords],
                "symbolic_norm": scale,
                "residual": numeric.residual,
                "error": error,
                "passed": passed,
            }
        )
        logger.debug("Sample %d of %s: error %.3e", index, f.name, error)

    frame = pd.DataFrame.from_records(records)
    max_error = float(frame["error"].max()) if not frame.empty else 0.0
    passed = bool(frame["passed"].all()) if not frame.empty else True
    log = logger.info if passed else logger.warning
    log("Derivative check of '%s' over %d samples: max error %.3e", f.name, samples, max_error)
    return DerivativeCheckReport(f.name, algebra.name, seed, config.relative_tolerance, frame, max_error, passed)
