from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from friction_pinn import __app_name__


class FrictionPinnConfig(BaseSettings):
    app_name: str = __app_name__
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"

    # numerical defaults, overridable per command
    lcp_tol: float = Field(default=1e-9, gt=0)
    max_pivots: int = Field(default=1000, gt=0)
    stick_velocity_tol: float = Field(default=1e-6, gt=0)

    output_dir: Path = Path("results")
    workers: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="FRICTION_PINN_",
        env_file_encoding="utf-8",
        env_file=".env",
        # if a setting is set to blah= in env, it will be ignored and
        # the default value will be used
        env_ignore_empty=True,
        # settings that are not in the model will be ignored
        extra="ignore",
        # if settings are re-defined the new ones will be validated
        validate_assignment=True,
    )
