"""Configuration management using Pydantic Settings."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Solver-wide defaults with environment and .env file support."""

    model_config = SettingsConfigDict(
        env_prefix="GFS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Time integration
    cfl: float = Field(default=0.45, gt=0.0, le=1.0, description="Courant number")
    integrator: str = Field(default="rk2", description="Explicit integrator (euler or rk2)")
    max_steps: int = Field(default=1_000_000, gt=0, description="Hard cap on time steps")

    # Scheme parameters
    theta: float = Field(default=1.3, ge=1.0, le=2.0, description="Generalized minmod theta")
    alpha_floor: float = Field(
        default=1e-12,
        gt=0.0,
        description="Lower bound for corner wave speeds, relative to the run's reference speed",
    )

    # Physics
    gravity: float = Field(default=9.812, gt=0.0, description="Gravity for shallow water")
    gamma: float = Field(default=1.4, gt=1.0, description="Ratio of specific heats for Euler")

    # Runs
    output_dir: str = Field(default="runs", description="Directory for run outputs")
    default_cells: int = Field(default=40, ge=2, description="Cells per direction if unset")
    desk_scale_limit: int = Field(
        default=160,
        ge=2,
        description="Largest cell count per direction accepted without --large",
    )

    # General settings
    debug: bool = Field(default=False, description="Enable debug mode")
    log_level: str = Field(default="INFO", description="Logging level")


# Singleton instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get settings singleton instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Reset settings singleton (useful for testing)."""
    global _settings
    _settings = None
