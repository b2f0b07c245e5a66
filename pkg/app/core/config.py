"""
Core configuration and settings module
"""
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def load_environment() -> Optional[str]:
    """Load the .env file matching CSF_ENVIRONMENT, if it exists"""
    env = os.getenv("CSF_ENVIRONMENT")

    # Anything other than 'prod' runs with the dev defaults
    if env != "prod":
        env = "dev"

    env_file = f".env.{env}"
    if os.path.exists(env_file):
        load_dotenv(env_file)
        return env_file
    return None


# Load environment before creating settings
loaded_env_file = load_environment()


class Settings(BaseSettings):
    """Toolkit settings; CLI flags override every field"""

    environment: str = Field(default="dev")

    # Logging settings
    log_level: str = Field(default="WARNING")
    log_dir: str = Field(default="logs")
    log_to_file: bool = Field(default=False)

    # Resource limits
    node_limit: int = Field(default=1 << 22, gt=0)
    subset_limit: int = Field(default=200_000, gt=0)
    timeout_s: Optional[float] = Field(default=None, gt=0)

    # Solver settings
    seed: int = Field(default=0)
    trim_violations: bool = Field(default=True)

    # Bench settings
    bench_jobs: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(env_prefix="CSF_", env_file=".env", case_sensitive=False, extra="ignore")

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with every non-None override applied"""
        updates = {key: value for key, value in overrides.items() if value is not None}
        return self.model_copy(update=updates)


# Global settings instance
settings = Settings()
