"""
Settings Configuration Module

This module defines the run-time defaults for the chimera simulator using
Pydantic's BaseSettings. Numerical tolerances, resource guards and output
locations live here so that every module reads them from one place.

The settings can be overridden by environment variables prefixed with
``CHIMERA_`` or through a .env file. Environment variables take precedence over
values defined in the .env file.
"""

import structlog
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = structlog.get_logger(__name__)


class Settings(BaseSettings):
    """
    Application settings model that provides defaults for all components.
    """

    # Log level for the CLI logger configuration
    log_level: str = "INFO"
    # Render log events as JSON lines instead of the console renderer
    log_json: bool = False
    # Root directory for scenario outputs when --out is not given
    output_dir: str = "runs"

    # Fixed RK4 step in units of 1/kappa1
    dt: float = 1e-3
    # Any |alpha_l| above this aborts the mean-field integration
    divergence_bound: float = 1e3
    # Floor for the smallest eigenvalue of C + i(hbar/2)Omega
    uncertainty_tolerance: float = 1e-8
    # Allowed asymmetry of a covariance matrix
    symmetry_tolerance: float = 1e-10
    # Most negative density-matrix eigenvalue tolerated before blaming truncation
    positivity_tolerance: float = 1e-4

    # Full-network Lindblad guard
    fock_max_nodes: int = 3
    fock_max_dimension: int = 512
    # Default occupation cutoff n_t per site
    default_truncation: int = 15

    # Worker processes used by the sweep runner
    sweep_workers: int = 1
    # Name recorded next to every seed
    rng_name: str = "numpy.PCG64"

    model_config = SettingsConfigDict(
        env_prefix="CHIMERA_",
        # This enables .env file support
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Create a global settings instance
settings = Settings()
logger.debug("settings", settings=settings.model_dump())
