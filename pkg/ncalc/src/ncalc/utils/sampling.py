"""Seeded samplers for algebra elements."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from ncalc.algebra.structure import Algebra, AlgebraElement


def random_rational_element(
    algebra: Algebra,
    rng: np.random.Generator,
    bound: int = 4,
    denominators: Sequence[int] = (1, 2, 3),
) -> AlgebraElement:
    """Element with small rational coordinates, exact path."""

    numerators = rng.integers(-bound, bound + 1, size=algebra.dim)
    chosen = rng.choice(np.asarray(denominators), size=algebra.dim)
    return algebra.element([Fraction(int(n), int(d)) for n, d in zip(numerators, chosen)])


def random_integral_element(algebra: Algebra, rng: np.random.Generator, bound: int = 3) -> AlgebraElement:
    return algebra.element([int(value) for value in rng.integers(-bound, bound + 1, size=algebra.dim)])


def random_real_element(algebra: Algebra, rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
    """Element with standard normal coordinates, real path."""

    return algebra.element(rng.normal(0.0, scale, size=algebra.dim))


def random_unit_direction(algebra: Algebra, rng: np.random.Generator) -> AlgebraElement:
    """Direction drawn uniformly from the unit sphere of the coordinate norm."""

    while True:
        vector = rng.normal(size=algebra.dim)
        length = float(np.linalg.norm(vector))
        if length > 1e-12:
            return algebra.element(vector / length)
