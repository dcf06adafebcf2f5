"""Rendering helpers shared by the CLI commands."""
from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

import click
import numpy as np
import pandas as pd

from ncalc.algebra.structure import AlgebraElement
from ncalc.utils.rationals import format_scalar


def coordinates(value: AlgebraElement) -> list:
    return [format_scalar(coord) for coord in value.coords]


def _default(value: Any) -> Any:
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, AlgebraElement):
        return coordinates(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serialisable")


def emit_json(payload: Mapping[str, Any]) -> None:
    click.echo(json.dumps(payload, indent=2, default=_default))


def emit_fields(rows: Sequence[tuple]) -> None:
    """Aligned ``key  value`` lines."""

    series = pd.Series({key: value for key, value in rows}, dtype=object)
    click.echo(series.to_string())


def emit_frame(frame: pd.DataFrame) -> None:
    click.echo(frame.to_string(index=False))
