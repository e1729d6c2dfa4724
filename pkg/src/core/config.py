"""Application configuration management."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Ambient settings with environment variable support.

    Nothing here changes a numerical result; only log verbosity and how many
    worker processes a parameter scan may use.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SLABQD_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "slab-quasidiffusion"
    version: str = "0.1.0"
    environment: str = Field(default="development")

    # Logging
    log_level: str = Field(default="INFO")
    log_json: bool = Field(default=False)

    # Scans
    scan_workers: int = Field(default=1, ge=1, le=64)

    @property
    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.environment.lower() == "production"

    @property
    def is_testing(self) -> bool:
        """Check if running in testing environment."""
        return self.environment.lower() == "testing"


@lru_cache()
def get_settings() -> Settings:
    """Get cached application settings."""
    return Settings()
