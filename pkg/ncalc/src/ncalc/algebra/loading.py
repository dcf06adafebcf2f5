"""Build algebras from spec documents and serialise them back."""
from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np

from ncalc.config.algebra_spec import AlgebraFlagsDocument, AlgebraSpecDocument, ConstantEntry
from ncalc.errors import MalformedSpec
from ncalc.utils.rationals import parse_rational

from .builtins import BUILTIN_NAMES, builtin
from .structure import Algebra, AlgebraFlags, associator_counterexample, unit_counterexample

logger = logging.getLogger(__name__)

AlgebraSource = Union[AlgebraSpecDocument, Mapping[str, Any], str, Path]


def _as_document(source: AlgebraSource) -> AlgebraSpecDocument:
    if isinstance(source, AlgebraSpecDocument):
        return source
    if isinstance(source, Mapping):
        return AlgebraSpecDocument.parse(dict(source))
    path = Path(source)
    if not path.exists():
        raise MalformedSpec(f"Algebra spec file not found: {path}")
    return AlgebraSpecDocument.from_file(path)


def load_algebra(source: AlgebraSource, *, seed: int = 0) -> Algebra:
    """Construct an algebra from a spec document, verifying every flag."""

    document = _as_document(source)
    dim = document.dim
    constants = np.array([Fraction(0)] * dim**3, dtype=object).reshape(dim, dim, dim)
    seen = set()
    for entry in document.constants:
        key = (entry.k, entry.l, entry.p)
        if key in seen:
            raise MalformedSpec(f"Duplicate structural constant entry {key} in '{document.name}'.")
        seen.add(key)
        constants[key] = parse_rational(entry.v)

    flags = document.flags
    unital = flags.unital if flags.unital is not None else unit_counterexample(constants) is None
    associative = (
        flags.associative if flags.associative is not None else associator_counterexample(constants) is None
    )
    generators = {
        name: [[parse_rational(value) for value in row] for row in matrix]
        for name, matrix in document.generators.items()
    }
    algebra = Algebra(
        document.name,
        document.labels(),
        constants,
        AlgebraFlags(
            unital=unital,
            associative=associative,
            division=flags.division,
            multiplicative_norm=flags.multiplicative_norm,
        ),
        generators,
        seed=seed,
    )
    logger.info("Loaded algebra '%s' from spec (%d nonzero constants)", algebra.name, len(seen))
    return algebra


def resolve_algebra(source: AlgebraSource, *, seed: int = 0) -> Algebra:
    """Accept a builtin name as well as anything `load_algebra` accepts."""

    if isinstance(source, str) and source.strip().lower() in BUILTIN_NAMES:
        return builtin(source)
    return load_algebra(source, seed=seed)


def dump_algebra(algebra: Algebra) -> AlgebraSpecDocument:
    """Spec document that loads back to an algebra with identical constants and flags."""

    return AlgebraSpecDocument(
        name=algebra.name,
        dim=algebra.dim,
        basis=list(algebra.basis_labels),
        flags=AlgebraFlagsDocument(
            unital=algebra.flags.unital,
            associative=algebra.flags.associative,
            division=algebra.flags.division,
            multiplicative_norm=algebra.flags.multiplicative_norm,
        ),
        constants=[ConstantEntry(k=k, l=l, p=p, v=str(value)) for k, l, p, value in algebra.nonzero_constants],
        generators={
            name: [[str(Fraction(value)) for value in row] for row in matrix]
            for name, matrix in algebra.generators.items()
        },
    )
