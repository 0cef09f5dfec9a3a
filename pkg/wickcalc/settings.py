"""Runtime configuration.

Values are read from the environment (prefix ``WICK_``) and from a ``.env``
file at the project root. ``LOG_LEVEL`` is honoured without the prefix.
"""
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from the project root
env_path = Path(__file__).parent.parent / '.env'
load_dotenv(dotenv_path=env_path, override=False)


class Settings(BaseSettings):
    """Tolerances, output formatting and resource caps."""

    model_config = SettingsConfigDict(env_prefix="WICK_", env_file=".env", extra="ignore")

    log_level: str = Field(
        "INFO",
        validation_alias=AliasChoices("LOG_LEVEL", "WICK_LOG_LEVEL"),
        description="Root logging level",
    )
    oracle_tolerance: float = Field(1e-10, description="Max deviation accepted by the check command")
    identity_tolerance: float = Field(1e-12, description="Deviation reported as exact by --oracle-check")
    float_digits: int = Field(17, ge=1, le=17, description="Significant digits in structured output")
    pairing_workers: int = Field(1, ge=1, description="Worker threads for pair-partition sums")
    default_cutoff: int = Field(6, ge=1, description="Bosonic occupation cutoff for oracle spaces")
    max_dimension: int = Field(4096, ge=2, description="Largest dense Fock space the oracle builds")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return Settings()
