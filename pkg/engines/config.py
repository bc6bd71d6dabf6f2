"""
GP Valuations Configuration

Environment-based settings for the valuation engines and the gpval CLI.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings loaded from GPVAL_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="GPVAL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "GP Valuation Engines"
    app_version: str = "0.1.0"
    log_level: str = "WARNING"

    # Conventions
    beta_convention: Literal["crapo", "paper"] = "crapo"

    # Pointwise oracles
    pointwise_samples: int = Field(default=200, ge=0)
    random_seed: int = 20240601

    # Inputs beyond this size are refused (enumerations are exponential)
    max_ground_size: int = Field(default=8, ge=1)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
