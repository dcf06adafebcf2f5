"""Parsing and formatting of scalar literals."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Union

Scalar = Union[Fraction, float]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_DECIMAL_PATTERN = re.compile(r"^\s*[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\s*$")


def parse_scalar(text: str | int | float | Fraction) -> Scalar:
    """Parse "3/2", "-1" exactly and "0.5", "1e-3" as floats.

    Decimal notation always selects the floating path.
    """

    if isinstance(text, bool):
        raise ValueError(f"Boolean is not a scalar: {text!r}")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return text
    match = _RATIONAL_PATTERN.match(text)
    if match:
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError(f"Zero denominator in scalar literal '{text}'.")
        return Fraction(int(numerator), int(denominator or 1))
    if _DECIMAL_PATTERN.match(text):
        return float(text)
    raise ValueError(f"Cannot parse scalar literal '{text}'.")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse a literal that must stay on the exact path."""

    value = parse_scalar(text)
    if isinstance(value, float):
        raise ValueError(f"Expected an exact rational, got decimal literal '{text}'.")
    return value


def parse_vector(text: str | Sequence[str]) -> List[Scalar]:
    """Parse a comma separated coordinate vector such as "0,1/2,0,0"."""

    items = text.split(",") if isinstance(text, str) else list(text)
    if not items or any(str(item).strip() == "" for item in items):
        raise ValueError(f"Malformed coordinate vector '{text}'.")
    return [parse_scalar(item if not isinstance(item, str) else item.strip()) for item in items]


def format_scalar(value: Scalar) -> str:
    """Render a scalar the way `parse_scalar` reads it back."""

    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))
