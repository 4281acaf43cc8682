from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.config_loader import AppConfig, load_app_config
from ..core.exceptions import NumericOverflowError

# Complex scalars travel as Python complex numbers; array inputs stay numpy arrays.
ComplexValue = complex
ArrayLike = Union[complex, float, int, np.ndarray]


class DecayHint(str, Enum):
    """Declared tail behaviour of an integrand, selects the variable substitution."""
    EXPONENTIAL = "exponential"
    ALGEBRAIC = "algebraic"
    GAUSSIAN = "gaussian"


class QuadratureSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=1e-10, gt=0, lt=1, description="Relative tolerance.")
    abs_tol: float = Field(default=1e-12, gt=0, description="Absolute tolerance.")
    max_subdivisions: int = Field(default=12, ge=1, le=40, description="Maximum number of step halvings.")

    @classmethod
    def from_config(cls, config: Optional[AppConfig] = None) -> "QuadratureSpec":
        """
        Builds the default tolerance object from the application configuration.

        Args:
            config (Optional[AppConfig]): Configuration to read. Loads (cached) defaults when omitted.

        Returns:
            QuadratureSpec: Tolerances from the ``numerics`` section.
        """
        cfg = config or load_app_config()
        return cls(
            rel_tol=cfg.numerics.rel_tol,
            abs_tol=max(cfg.numerics.abs_tol, 1e-300),
            max_subdivisions=cfg.numerics.max_subdivisions,
        )

    def tolerance(self, magnitude: float) -> float:
        return max(self.rel_tol * magnitude, self.abs_tol)

    def tightened(self, factor: float) -> "QuadratureSpec":
        """Copy with both tolerances divided by ``factor`` (inner integrals of nested rules)."""
        return self.model_copy(update={"rel_tol": self.rel_tol / factor, "abs_tol": self.abs_tol / factor})


class QuadratureResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: complex
    error_estimate: float = Field(ge=0)
    evaluations: int = Field(ge=0)


def resolve_spec(spec: Optional[QuadratureSpec]) -> QuadratureSpec:
    return spec if spec is not None else QuadratureSpec.from_config()


def as_complex_array(z: ArrayLike) -> Tuple[np.ndarray, bool]:
    """Returns ``(1-D complex array, was_scalar)``."""
    scalar = np.ndim(z) == 0
    return np.atleast_1d(np.asarray(z, dtype=complex)), scalar


def restore(values: np.ndarray, scalar: bool, shape: Optional[tuple] = None):
    if scalar:
        item = values.reshape(-1)[0]
        return complex(item) if np.iscomplexobj(values) else float(item)
    return values.reshape(shape) if shape is not None else values


def ensure_finite(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NumericOverflowError(f"{what} produced a non-finite value.")
    return values
