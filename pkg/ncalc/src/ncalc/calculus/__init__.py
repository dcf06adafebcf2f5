"""Numeric differentiation, the exponent series, integration of differential specifications."""
from .invariants import InvariantResult, InvariantSuite, run_algebra_checks, run_selftest
from .numeric_diff import (
    DerivativeCheckReport,
    FiniteDifferenceResult,
    InfinitesimalOrderResult,
    JacobianMatrix,
    NumericMap,
    central_difference,
    check_derivative,
    fd_differential,
    infinitesimal_order,
    jacobian,
)
from .ode import (
    DifferentialSpec,
    IntegrabilityReport,
    Verdict,
    induced_derivative,
    integrate,
    verify_solution,
)
from .series import (
    ExpResult,
    ExpSumReport,
    ShuffleWord,
    TruncatedSeries,
    diagonal_shuffle_value,
    exp,
    exp_layer_discrepancy,
    exp_series,
    exp_sum_check,
    remainder_bound,
    shuffle_form,
    shuffle_words,
)

__all__ = [
    "DerivativeCheckReport",
    "DifferentialSpec",
    "ExpResult",
    "ExpSumReport",
    "FiniteDifferenceResult",
    "InfinitesimalOrderResult",
    "IntegrabilityReport",
    "InvariantResult",
    "InvariantSuite",
    "JacobianMatrix",
    "NumericMap",
    "ShuffleWord",
    "TruncatedSeries",
    "Verdict",
    "central_difference",
    "check_derivative",
    "diagonal_shuffle_value",
    "exp",
    "exp_layer_discrepancy",
    "exp_series",
    "exp_sum_check",
    "fd_differential",
    "induced_derivative",
    "infinitesimal_order",
    "integrate",
    "jacobian",
    "remainder_bound",
    "run_algebra_checks",
    "run_selftest",
    "shuffle_form",
    "shuffle_words",
    "verify_solution",
]
