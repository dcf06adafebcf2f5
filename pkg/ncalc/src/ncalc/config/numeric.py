"""Configuration for the finite-difference oracle and real-path comparisons."""
from __future__ import annotations

import logging
import os
from typing import Tuple

from dotenv import load_dotenv
from pydantic import Field, field_validator

from .base import BaseConfig

logger = logging.getLogger(__name__)

TOLERANCE_ENV_VAR = "NCALC_TOL"


class NumericConfig(BaseConfig):
    """Step schedule and tolerances used by numeric checks."""

    steps: Tuple[float, float] = Field(
        (1e-3, 1e-4), description="Central-difference steps, coarse then fine, for Richardson extrapolation."
    )
    relative_tolerance: float = Field(
        1e-6, gt=0.0, description="Relative error accepted between symbolic and numeric differentials."
    )
    absolute_floor: float = Field(
        1e-9, gt=0.0, description="Absolute error floor below which differences count as zero."
    )
    comparison_tolerance: float = Field(
        1e-12, gt=0.0, description="Tolerance for identities checked on the floating path."
    )
    samples: int = Field(100, ge=1, description="Default number of sample points per check.")

    @field_validator("steps")
    @classmethod
    def _validate_steps(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        coarse, fine = value
        if not (coarse > fine > 0.0):
            raise ValueError("steps must be positive and ordered coarse > fine.")
        return value

    @classmethod
    def from_env(cls, **overrides) -> "NumericConfig":
        """Build a config honouring NCALC_TOL from the environment or a .env file."""

        load_dotenv()
        raw = os.environ.get(TOLERANCE_ENV_VAR)
        if raw is not None and "relative_tolerance" not in overrides:
            try:
                overrides["relative_tolerance"] = float(raw)
            except ValueError as exc:
                raise ValueError(f"{TOLERANCE_ENV_VAR} must be a number, got '{raw}'.") from exc
            logger.debug("Relative tolerance overridden from %s: %s", TOLERANCE_ENV_VAR, raw)
        return cls.parse(overrides)


NumericConfig.model_rebuild()
