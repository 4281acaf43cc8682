# Shared configuration loading, exception hierarchy, logging setup and the
# ordered parallel map used by grid evaluations.

from .config_loader import AppConfig, load_app_config, reset_config_cache
from .exceptions import (
    CharacterLatticeException,
    CheckFailure,
    ConfigException,
    DivergenceError,
    DomainError,
    FieldDataException,
    MomentLabException,
    NumericOverflowError,
    NumericsException,
    PoleError,
    QuadratureError,
    SlowDecayWarning,
    TruncationWarning,
)
from .logging_setup import configure_logging
from .parallel import ordered_map

__all__ = [
    "load_app_config",
    "reset_config_cache",
    "AppConfig",
    "configure_logging",
    "ordered_map",
    "MomentLabException",
    "ConfigException",
    "NumericsException",
    "PoleError",
    "DomainError",
    "NumericOverflowError",
    "QuadratureError",
    "DivergenceError",
    "FieldDataException",
    "CharacterLatticeException",
    "CheckFailure",
    "TruncationWarning",
    "SlowDecayWarning",
]
