"""
Configuration management for kitebilliards.

Centralizes iteration budgets, sampling parameters and output options
with environment variable support, validation, and type safety.
"""
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogLevel(str, Enum):
    """Logging levels."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class OutputFormat(str, Enum):
    """Artifact formats understood by the CLI."""
    JSON = "json"
    CSV = "csv"
    SVG = "svg"


class OrbitConfig(BaseModel):
    """Budgets for direct outer billiards iteration."""
    budget_factor: int = Field(default=10, ge=1)
    budget_offset: int = Field(default=1000, ge=0)
    max_orbit_steps: int = Field(default=2_000_000, ge=1)


class MasterPictureConfig(BaseModel):
    """Parameters of the master picture evaluation and partition certificates."""
    alpha_denominator_factor: int = Field(default=2, ge=2)
    separation_range: int = Field(default=10, ge=0)
    sample_count: int = Field(default=10_000, ge=1)
    sample_denominator: int = Field(default=997, ge=2)
    sample_seed: int = 1997


class GraphConfig(BaseModel):
    """Arithmetic graph windows and tracing limits."""
    trace_max_steps: int = Field(default=500_000, ge=1)
    window_q_factor: int = Field(default=2, ge=1)


class CometConfig(BaseModel):
    """Renormalization depth settings."""
    depth: int = Field(default=8, ge=1)
    dimension_lookahead: int = Field(default=2, ge=1)


class OutputConfig(BaseModel):
    """Artifact rendering options."""
    format: OutputFormat = OutputFormat.JSON
    decimal_places: Optional[int] = Field(default=None, ge=0)
    svg_scale: float = Field(default=8.0, gt=0.0)


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_prefix="KB_",
        env_nested_delimiter="__",
        case_sensitive=False,
    )

    app_name: str = "kitebilliards"
    version: str = "1.0.0"
    log_level: LogLevel = LogLevel.INFO

    output_dir: Path = Field(default_factory=lambda: Path.cwd() / "artifacts")

    orbit: OrbitConfig = Field(default_factory=OrbitConfig)
    master: MasterPictureConfig = Field(default_factory=MasterPictureConfig)
    graph: GraphConfig = Field(default_factory=GraphConfig)
    comet: CometConfig = Field(default_factory=CometConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    def return_budget(self, radius: int) -> int:
        """Step budget for a first return started at distance ``radius``.

        Args:
            radius: Integer upper bound on the starting distance from the origin

        Returns:
            Maximum number of square-map steps before giving up
        """
        return self.orbit.budget_factor * radius + self.orbit.budget_offset

    def artifact_path(self, name: str, **kwargs: Any) -> Path:
        """Path for an artifact file, creating the output directory on demand."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        suffix = kwargs.get("suffix") or self.output.format.value
        return self.output_dir / f"{name}.{suffix}"


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance.

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """Reload settings from environment.

    Returns:
        New settings instance
    """
    global _settings
    _settings = Settings()
    return _settings
