"""
Centralized configuration management with Pydantic validation.

Precedence: environment (FRUC_*) > YAML file > defaults.
"""

from __future__ import annotations

from math import lcm
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
import structlog
import yaml

from .core.error_handling import ConfigurationError
from .models import InterpolationMode

logger = structlog.get_logger(__name__)


class FrucConfig(BaseModel):
    """Block sizes, search ranges, OBMC margin and output mode."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    uni_block: int = Field(default=8, ge=1)
    uni_search: int = Field(default=16, ge=1)
    bi_block: int = Field(default=16, ge=1)
    bi_search: int = Field(default=8, ge=1)
    obmc_margin: int = Field(default=2, ge=0)
    mode: InterpolationMode = InterpolationMode.PROPOSED

    @model_validator(mode="after")
    def _check_margin(self) -> FrucConfig:
        if 2 * self.obmc_margin >= self.bi_block:
            raise ValueError(
                f"obmc_margin must be below bi_block / 2, got {self.obmc_margin} "
                f"for bi_block {self.bi_block}"
            )
        return self

    @classmethod
    def build(cls, **values: Any) -> FrucConfig:
        """Construct a config, reporting invalid values as ConfigurationError."""
        try:
            return cls(**values)
        except ValidationError as e:
            first = e.errors()[0]
            key = ".".join(str(part) for part in first["loc"]) or None
            raise ConfigurationError(
                f"Invalid FRUC configuration: {first['msg']}", config_key=key, cause=e
            ) from e

    @property
    def alignment(self) -> int:
        """Block grid alignment shared by the unilateral and bilateral grids."""
        return lcm(self.uni_block, self.bi_block)

    def with_mode(self, mode: InterpolationMode | str) -> FrucConfig:
        return self.model_copy(update={"mode": InterpolationMode(mode)})


class FrucSettings(BaseSettings):
    """Process-level settings: algorithm config plus runtime knobs."""

    model_config = SettingsConfigDict(
        env_prefix="FRUC_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    engine: FrucConfig = Field(default_factory=FrucConfig)
    log_level: str = Field(default="INFO")
    log_json: bool = Field(default=False)
    workers: int = Field(default=1, ge=1)
    psnr_cap_db: float = Field(default=100.0, gt=0)
    trim_border: int = Field(default=0, ge=0)


def merge_config_sources(
    defaults: dict[str, Any],
    file_config: dict[str, Any] | None = None,
    env_config: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """Layer settings mappings; env wins over file, file over defaults, key by key."""

    def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
        result = base.copy()
        for key, value in override.items():
            if (
                key in result
                and isinstance(result[key], dict)
                and isinstance(value, dict)
            ):
                result[key] = deep_merge(result[key], value)
            else:
                result[key] = value
        return result

    merged = defaults.copy()
    if file_config:
        merged = deep_merge(merged, file_config)
    if env_config:
        merged = deep_merge(merged, env_config)
    return merged


def load_config_file(path: Path) -> dict[str, Any]:
    """Read a YAML settings file into a plain mapping."""
    try:
        with path.open("r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as e:
        raise ConfigurationError(
            f"Cannot read config file {path}: {e}", config_key=str(path), cause=e
        ) from e
    except yaml.YAMLError as e:
        raise ConfigurationError(
            f"Malformed YAML in {path}: {e}", config_key=str(path), cause=e
        ) from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(
            f"Config file {path} must hold a mapping", config_key=str(path)
        )
    return data


def load_settings(path: Path | None = None) -> FrucSettings:
    """Load settings from defaults, an optional YAML file and the environment."""
    try:
        env_config = FrucSettings().model_dump(exclude_unset=True)
        file_config = load_config_file(path) if path is not None else None
        merged = merge_config_sources({}, file_config, env_config)
        settings = FrucSettings(**merged)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigurationError(
            f"Invalid settings: {first['msg']}", config_key=key, cause=e
        ) from e

    logger.debug(
        "settings_loaded",
        source=str(path) if path else "environment",
        mode=settings.engine.mode.value,
        workers=settings.workers,
    )
    return settings
