"""Noncommutative expressions, multilinear derivative forms and their exact expansion."""
from .coordinates import (
    AsymmetryWitness,
    CoordinatePolynomial,
    SymmetryClass,
    asymmetry_witness,
    canonical_expand,
    canonical_expand_form,
    equal,
    symmetry_class,
)
from .expression import (
    X,
    Const,
    Inverse,
    NcExpression,
    Prod,
    Sum,
    Var,
    algebra_of,
    degree,
    evaluate,
    is_polynomial,
    monomial,
    random_monomial,
    random_polynomial,
    substitute,
)
from .forms import (
    DirectionSlot,
    InverseSlot,
    MultilinearForm,
    VarSlot,
    Word,
    derivative,
    derivative_recursive,
    differentiate,
    eval_form,
    expand_form,
    pushforward,
)
from .parser import format_expression, parse_expression
from .taylor import TruncatedSeries, taylor, taylor_from_forms, taylor_series

__all__ = [
    "AsymmetryWitness",
    "Const",
    "CoordinatePolynomial",
    "DirectionSlot",
    "Inverse",
    "InverseSlot",
    "MultilinearForm",
    "NcExpression",
    "Prod",
    "Sum",
    "SymmetryClass",
    "TruncatedSeries",
    "Var",
    "VarSlot",
    "Word",
    "X",
    "algebra_of",
    "asymmetry_witness",
    "canonical_expand",
    "canonical_expand_form",
    "degree",
    "derivative",
    "derivative_recursive",
    "differentiate",
    "equal",
    "eval_form",
    "evaluate",
    "expand_form",
    "format_expression",
    "is_polynomial",
    "monomial",
    "parse_expression",
    "pushforward",
    "random_monomial",
    "random_polynomial",
    "substitute",
    "symmetry_class",
    "taylor",
    "taylor_from_forms",
    "taylor_series",
]
