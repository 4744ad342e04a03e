"""Configuration management using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LatticeSettings(BaseSettings):
    """Noncrossing-lattice settings."""

    model_config = SettingsConfigDict(env_prefix="AMALGAM_")

    max_n: int = Field(
        default=10,
        ge=1,
        description="Largest ground set enumerated (safety cap, |NC(10)| = 16796)",
    )


class HarnessSettings(BaseSettings):
    """Randomized verification harness settings."""

    model_config = SettingsConfigDict(env_prefix="AMALGAM_HARNESS_")

    dim: int = Field(default=2, ge=1, description="Dimension d of B = M_d")
    order: int = Field(default=3, ge=1, description="Pair truncation order N_pair")
    count: int = Field(default=1, ge=1, description="Number of consecutive seeds")
    workers: int = Field(default=1, ge=1, description="Process pool size for multi-seed runs")
    depth: Optional[int] = Field(
        default=None,
        ge=0,
        description="Reconstruction depth; unset means order // 2",
    )
    numerator_bound: int = Field(
        default=3,
        ge=0,
        description="Random numerators are uniform in [-bound, bound]",
    )
    denominators: list[int] = Field(
        default_factory=lambda: [1, 2],
        description="Random denominators are drawn uniformly from this list",
    )


class OutputSettings(BaseSettings):
    """Report output settings."""

    model_config = SettingsConfigDict(env_prefix="AMALGAM_OUTPUT_")

    format: Literal["json", "text"] = Field(default="json", description="Default report format")
    indent: int = Field(default=2, ge=0, description="JSON indentation")


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )

    debug: bool = Field(default=False, description="Debug mode")

    # Sub-settings
    lattice: LatticeSettings = Field(default_factory=LatticeSettings)
    harness: HarnessSettings = Field(default_factory=HarnessSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    # Paths
    templates_dir: Path = Field(
        default=Path(__file__).resolve().parent.parent / "src" / "reports" / "templates",
        description="Directory for text report templates",
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get application settings singleton."""
    return Settings()
