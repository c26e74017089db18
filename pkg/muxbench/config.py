"""
Configuration management for muxbench.

Handles all tool settings with validation, type safety, and environment-based configuration.
"""
import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Tool settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="MUXBENCH_",
        case_sensitive=False,
    )

    # Application
    VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "info"
    LOG_JSON: bool = True

    # Hardware
    T_SW_NS: int = 10  # switch settling time

    # Runs
    DEFAULT_SEED: int = 1234
    DEFAULT_SEEDS: int = 100
    DEFAULT_JOBS: int = 1
    OUTPUT_PATH: str = "./results"

    # Random circuit generation
    RANDOM_W1: float = 0.7

    # Router
    ROUTER_EXTENDED_SET_SIZE: int = 20
    ROUTER_EXTENDED_SET_WEIGHT: float = 0.5
    ROUTER_DECAY_DELTA: float = 0.001
    ROUTER_DECAY_RESET: int = 5

    # Switch grouping
    CLUSTER_SWAP_CAP_FACTOR: int = 50

    # Scaling models
    QUEUE_DEFAULT_TRIALS: int = 100_000
    TOY_DEFAULT_TRIALS: int = 1000

    # Plotting
    PLOT_HASH_SALT: str = "muxbench"

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        if not isinstance(logging.getLevelName(v.upper()), int):
            raise ValueError(f"Unknown log level: {v}")
        return v.lower()

    @field_validator("T_SW_NS")
    @classmethod
    def validate_t_sw(cls, v: int) -> int:
        if v < 0:
            raise ValueError("T_SW_NS must be non-negative")
        return v

    @field_validator("RANDOM_W1")
    @classmethod
    def validate_w1(cls, v: float) -> float:
        if not 0.0 <= v <= 1.0:
            raise ValueError("RANDOM_W1 must lie in [0, 1]")
        return v

    def output_dir(self, override: Optional[str] = None) -> Path:
        """Resolve and create the output directory."""
        path = Path(override or self.OUTPUT_PATH)
        path.mkdir(parents=True, exist_ok=True)
        return path


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
