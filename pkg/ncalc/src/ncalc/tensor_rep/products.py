"""Tensor product of two algebras as an algebra in its own right."""
from __future__ import annotations

import logging

import numpy as np

from ncalc.algebra.structure import Algebra, AlgebraElement, AlgebraFlags

logger = logging.getLogger(__name__)


def tensor_algebra(first: Algebra, second: Algebra) -> Algebra:
    """Constants C[(a,b),(c,d),(p,q)] = C1[a,c,p] C2[b,d,q] on the basis e_a ⊗ f_b.

    A one-dimensional factor contributes nothing, so the other factor's flags carry over.
    """

    constants = np.multiply.outer(first.constants, second.constants)
    dim = first.dim * second.dim
    constants = constants.transpose(0, 3, 1, 4, 2, 5).reshape(dim, dim, dim)
    labels = [f"{left}⊗{right}" for left in first.basis_labels for right in second.basis_labels]
    if first.dim == 1 and first.flags.unital:
        flags = second.flags
    elif second.dim == 1 and second.flags.unital:
        flags = first.flags
    else:
        flags = AlgebraFlags(
            unital=first.flags.unital and second.flags.unital,
            associative=first.flags.associative and second.flags.associative,
        )
    algebra = Algebra(f"{first.name}⊗{second.name}", labels, constants, flags)
    logger.info("Built tensor product algebra '%s' of dimension %d", algebra.name, dim)
    return algebra


def tensor_element(product: Algebra, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The pure tensor a ⊗ b as an element of ``product``."""

    if product.dim != a.algebra.dim * b.algebra.dim:
        raise ValueError(
            f"'{product.name}' has dimension {product.dim}, expected {a.algebra.dim * b.algebra.dim}."
        )
    return product.element(np.multiply.outer(a.coords, b.coords).ravel())
