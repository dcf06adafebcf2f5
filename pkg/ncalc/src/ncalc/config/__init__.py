"""Configuration models and input documents for ncalc."""
from .algebra_spec import AlgebraFlagsDocument, AlgebraSpecDocument, ConstantEntry
from .base import BaseConfig, BaseDocument, read_document
from .numeric import TOLERANCE_ENV_VAR, NumericConfig
from .ode_spec import DifferentialSpecDocument, WordEntry
from .series import SeriesConfig

__all__ = [
    "AlgebraFlagsDocument",
    "AlgebraSpecDocument",
    "BaseConfig",
    "BaseDocument",
    "ConstantEntry",
    "DifferentialSpecDocument",
    "NumericConfig",
    "SeriesConfig",
    "TOLERANCE_ENV_VAR",
    "WordEntry",
    "read_document",
]
