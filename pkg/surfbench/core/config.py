"""
Configuration management for SurfBench.
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SurfBenchConfig(BaseSettings):
    """
    Centralized configuration for SurfBench.

    Loads configuration from environment variables with SURFBENCH_ prefix.
    The schemes directory is read from SURFBENCH_SCHEMES.
    """

    model_config = SettingsConfigDict(
        env_prefix="SURFBENCH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Scheme Configuration
    schemes_dir: Optional[str] = Field(
        default=None,
        validation_alias=AliasChoices("SURFBENCH_SCHEMES", "schemes_dir"),
        description="Directory of JSON scheme files loaded alongside the built-in presets",
    )

    # Scoring Configuration
    adjusted: bool = Field(
        default=True,
        description="Group-weight characteristics and distance metrics over match groups",
    )
    weighting: Literal["log2", "linear"] = Field(
        default="log2",
        description="Match-group weighting (log2 = per-character information, linear = group size)",
    )
    rank_variant: Literal["log", "linear"] = Field(
        default="log",
        description="Guessing-order score variant (log = bits ratio, linear = rank ratio)",
    )
    ngram_n: int = Field(
        default=2,
        ge=1,
        le=5,
        description="n-gram length for the n-gram Dice metric",
    )

    # Processing Configuration
    jobs: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Number of worker processes used to score records",
    )
    lenient: bool = Field(
        default=False,
        description="Skip invalid dataset rows with a summary instead of failing",
    )
    demo_seed: int = Field(
        default=274,
        ge=0,
        description="Seed for the synthetic demo dataset",
    )

    # Report Configuration
    significance_level: float = Field(
        default=0.05,
        gt=0.0,
        lt=1.0,
        description="Adjusted p-value threshold for significance markers",
    )
    include_timestamp: bool = Field(
        default=True,
        description="Write a generation timestamp into report metadata",
    )

    # Monitoring Configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING",
        description="Logging level",
    )
    structured_logging: bool = Field(
        default=True,
        description="Enable structured JSON logging",
    )

    def validate_config(self) -> None:
        """Validate configuration and raise errors for invalid settings."""
        from surfbench.exceptions import ConfigurationError

        if self.schemes_dir is not None and not Path(self.schemes_dir).is_dir():
            raise ConfigurationError(
                "schemes_dir is not a directory",
                details={"schemes_dir": self.schemes_dir},
            )

    @property
    def scoring_label(self) -> str:
        """Short label of the scoring options, used in logs."""
        adjusted = "adjusted" if self.adjusted else "plain"
        return f"{adjusted}/{self.weighting}/{self.rank_variant}/n={self.ngram_n}"
