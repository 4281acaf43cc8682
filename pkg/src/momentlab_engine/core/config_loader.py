import logging
import os
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigException

logger = logging.getLogger(__name__)

# Sections of the configuration, one pydantic model each, so that values coming
# from YAML, .env or the environment are type checked before any numerics run.

class NumericsConfig(BaseModel):
    rel_tol: float = Field(default=1e-10, gt=0, lt=1, description="Default relative tolerance for quadratures and series.")
    abs_tol: float = Field(default=1e-12, ge=0, description="Default absolute tolerance.")
    max_subdivisions: int = Field(default=12, ge=1, le=40, description="Maximum number of step halvings in adaptive rules.")

class ExecutionConfig(BaseModel):
    workers: int = Field(default=1, ge=1, description="Thread pool size for grid evaluations.")
    deterministic: bool = Field(default=True, description="Keep result ordering independent of scheduling.")

class OutputConfig(BaseModel):
    format: Literal["csv", "yaml"] = "csv"
    directory: str = "results"

class AppConfig(BaseSettings):
    """
    Main application configuration model, loaded from YAML and environment variables.
    Pydantic-settings will automatically try to load from .env file and environment variables.
    """
    model_config = SettingsConfigDict(
        env_prefix='MOMENTLAB__',
        env_file='.env',
        env_file_encoding='utf-8',
        env_nested_delimiter='__',      # MOMENTLAB__NUMERICS__REL_TOL=1e-8
        extra='ignore'
    )

    app_name: str = "MomentLab"
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    execution: ExecutionConfig = Field(default_factory=ExecutionConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    logging_config_path: str = "config/logging_config.yaml"

    @classmethod
    def settings_customise_sources(cls, settings_cls, init_settings, env_settings, dotenv_settings, file_secret_settings):
        # Environment beats .env beats YAML (passed as init kwargs).
        return env_settings, dotenv_settings, init_settings, file_secret_settings

    @field_validator("logging_config_path")
    @classmethod
    def non_empty_path(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("logging_config_path must not be empty")
        return value


DEFAULT_CONFIG_PATH = "config/momentlab_config.yaml"

_cached_config: Optional[AppConfig] = None

def load_app_config(config_file_path: str = DEFAULT_CONFIG_PATH, force_reload: bool = False) -> AppConfig:
    """
    Loads application configuration from a YAML file, environment variables, and .env file.
    Caches the loaded configuration to avoid repeated file I/O.

    Args:
        config_file_path (str): Path to the main YAML configuration file.
        force_reload (bool): If True, reloads the configuration even if cached.

    Returns:
        AppConfig: The loaded and validated application configuration.

    Raises:
        ConfigException: If the YAML file cannot be parsed or values fail validation.
    """
    global _cached_config
    if _cached_config is not None and not force_reload:
        return _cached_config

    yaml_config = {}
    if os.path.exists(config_file_path):
        try:
            with open(config_file_path, 'r') as f:
                yaml_config = yaml.safe_load(f) or {}
            logger.debug("Loaded YAML config from %s", config_file_path)
        except yaml.YAMLError as e:
            raise ConfigException(f"Error parsing YAML config file {config_file_path}: {e}") from e
        if not isinstance(yaml_config, dict):
            raise ConfigException(f"Top level of {config_file_path} must be a mapping.")
    else:
        logger.debug("No YAML config at %s, using defaults and environment.", config_file_path)

    # YAML provides base values; .env and the environment override them.
    try:
        app_conf = AppConfig(**yaml_config)
    except ValidationError as e:
        raise ConfigException(f"Invalid configuration: {e}") from e
    _cached_config = app_conf
    return app_conf


def reset_config_cache() -> None:
    global _cached_config
    _cached_config = None
