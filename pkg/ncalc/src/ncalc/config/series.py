"""Configuration for truncated power series."""

from pydantic import Field

from .base import BaseConfig


class SeriesConfig(BaseConfig):
    """Truncation and tolerance settings for the exponent."""

    truncation_order: int = Field(30, ge=0, description="Highest power kept in the series.")
    sum_tolerance: float = Field(
        1e-10, gt=0.0, description="Tolerance used when comparing exp(a+b) with exp(a)exp(b)."
    )
    exact: bool = Field(
        False, description="Sum the series in exact rationals instead of floating coordinates."
    )


SeriesConfig.model_rebuild()
