"""Base configuration utilities for ncalc."""

import json
from pathlib import Path
from typing import Any, Dict, Type, TypeVar

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ncalc.errors import MalformedSpec

try:
    import tomllib
except ImportError:  # pragma: no cover
    import tomli as tomllib

_D = TypeVar("_D", bound="BaseDocument")


def read_document(path: Path | str) -> Dict[str, Any]:
    """Read a JSON, TOML or YAML file into a plain mapping."""

    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".json":
        with path.open("r", encoding="utf-8") as fp:
            data = json.load(fp)
    elif suffix == ".toml":
        with path.open("rb") as fp:
            data = tomllib.load(fp)
    elif suffix in {".yaml", ".yml"}:
        with path.open("r", encoding="utf-8") as fp:
            data = yaml.safe_load(fp)
    else:
        raise MalformedSpec(f"Unsupported document format '{suffix}' for {path}")
    if not isinstance(data, dict):
        raise MalformedSpec(f"Document {path} must contain a mapping at the top level.")
    return data


class BaseDocument(BaseModel):
    """Shared model settings for configs and input documents."""

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        protected_namespaces=(),
    )

    @model_validator(mode="before")
    @classmethod
    def _normalize_keys(cls, values: Any) -> Any:
        """Normalise incoming keys to snake_case for YAML/TOML compatibility."""

        if not isinstance(values, dict):
            return values
        return {str(key).replace("-", "_"): value for key, value in values.items()}

    @classmethod
    def parse(cls: Type[_D], data: Any) -> _D:
        """Validate raw data, reporting failures as MalformedSpec."""

        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise MalformedSpec(f"Invalid {cls.__name__}: {exc}") from exc

    @classmethod
    def from_file(cls: Type[_D], path: Path | str) -> _D:
        """Load a document from a JSON, TOML or YAML file."""

        return cls.parse(read_document(path))

    def to_dict(self) -> Dict[str, Any]:
        """Return a serialisable representation of the document."""

        return self.model_dump(mode="json")


class BaseConfig(BaseDocument):
    """Base configuration class for all ncalc components."""

    random_seed: int = Field(42, description="Random seed used for sampled checks.")
    logging_level: str = Field(
        "INFO", description="Python logging level for the component using this config."
    )
