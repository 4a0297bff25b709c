"""Application configuration loaded from environment variables.

All settings are read from env (prefix ``NETFLUX_``) and an optional .env
file. Library functions fall back to these values when a keyword argument
is left as ``None``.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from environment (and .env file when present)."""

    model_config = SettingsConfigDict(
        env_prefix="NETFLUX_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Runs
    seed: int = Field(default=0, ge=0, description="Default base seed (NETFLUX_SEED)")
    workers: int = Field(default=1, ge=1, le=256, description="Worker processes for sweeps")
    output_dir: str = Field(default="results", description="Default output directory")
    log_level: str = Field(default="INFO", description="Logging level (DEBUG, INFO, WARNING, ERROR)")

    # Electrical current
    current_tol: float = Field(default=1e-10, gt=0.0, lt=1.0, description="Relative residual target")
    current_maxiter_factor: int = Field(
        default=50, ge=1, description="Iteration cap is this factor times the node count"
    )

    # Configuration model
    sf_rewire_factor: int = Field(
        default=100, ge=0, description="Rewiring attempts per node before deleting colliding stubs"
    )
    sf_warn_deleted_fraction: float = Field(
        default=0.02, ge=0.0, le=1.0, description="Deleted-stub fraction that triggers a warning"
    )
    sf_max_deleted_fraction: float = Field(
        default=0.10, ge=0.0, le=1.0, description="Deleted-stub fraction that fails generation"
    )

    # Random walks
    walk_max_steps: int = Field(
        default=1_000_000, ge=1, description="Steps after which an unabsorbed walker counts as failed"
    )

    # Multi-commodity flow
    mcflow_lp_max_nodes: int = Field(
        default=256, ge=2, description="Largest graph solved by the exact LP; above it the approximation runs"
    )
    mcflow_epsilon: float = Field(
        default=0.1, gt=0.0, lt=1.0, description="Accuracy parameter of the multiplicative-weights solver"
    )
    exact_mc_max_nodes: int = Field(default=12, ge=2, le=12, description="Size cap of the integral oracle")
    exact_mc_max_pairs: int = Field(default=4, ge=1, le=4, description="Pair cap of the integral oracle")
    exact_mc_budget: int = Field(
        default=2_000_000, ge=1, description="Search steps before the integral oracle gives up"
    )

    # Theory
    pdf_tail_mass: float = Field(
        default=1e-12, gt=0.0, lt=1e-6, description="Tail mass at which infinite sums are truncated"
    )

    # Sweeps
    failure_fraction_limit: float = Field(
        default=0.10, ge=0.0, le=1.0, description="Failure fraction above which a sweep fails"
    )


@lru_cache
def get_settings() -> Settings:
    """Return cached settings instance (env loaded once)."""
    return Settings()
