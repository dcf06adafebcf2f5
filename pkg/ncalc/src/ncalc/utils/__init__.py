"""Utility helpers shared across ncalc modules."""

from .linalg import exact_rank, exact_solve, to_domain_matrix
from .rationals import Scalar, format_scalar, parse_rational, parse_scalar, parse_vector

__all__ = [
    "Scalar",
    "exact_rank",
    "exact_solve",
    "format_scalar",
    "parse_rational",
    "parse_scalar",
    "parse_vector",
    "to_domain_matrix",
]
