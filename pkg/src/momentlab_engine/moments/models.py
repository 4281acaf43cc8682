from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..kernels.models import MeasureConvention


class MomentReport(BaseModel):
    """Integrals of |zeta(1/2 + it)|^power over [0, T] on a T-grid, with a fit in log T."""
    model_config = ConfigDict(frozen=True)

    power: int = Field(..., description="2 for the second moment, 4 for the fourth.")
    T_grid: List[float]
    integrals: List[float]
    fitted_coefficients: List[float] = Field(description="Highest power of log T first.")
    residuals: float = Field(ge=0, description="Root-mean-square residual of the fit of I(T)/T.")
    runtime_seconds: float = Field(ge=0)
    main_terms: Optional[List[float]] = Field(None, description="Classical two-term asymptotic, second moment only.")

    @model_validator(mode="after")
    def monotone_integrals(self) -> "MomentReport":
        if len(self.T_grid) != len(self.integrals):
            raise ValueError("T_grid and integrals must have the same length")
        if any(value < 0 for value in self.integrals):
            raise ValueError("moment integrals are nonnegative")
        if any(b < a for a, b in zip(self.integrals, self.integrals[1:])):
            raise ValueError("moment integrals must be nondecreasing in T")
        return self

    @property
    def leading_coefficient(self) -> float:
        return self.fitted_coefficients[0]


class CriticalLineIntegrals(BaseModel):
    model_config = ConfigDict(frozen=True)

    T_grid: List[float]
    values: Dict[int, List[float]] = Field(description="Cumulative integral at every T, per power.")
    panel_width: float = Field(gt=0, description="Width of the Gauss-Legendre panels after refinement.")
    evaluations: int = Field(ge=0)
    relative_change: float = Field(ge=0, description="Largest change in the last refinement.")


class WeightFunction(str, Enum):
    GAUSSIAN_SHIFT = "gaussian_shift"


class WeightSpec(BaseModel):
    """
    Smoothing weight h(w) T^w integrated along Re w = contour_re.

    The only weight is h(w) = exp((w - 1)^2): holomorphic with h(1) = 1 and Gaussian
    decay on vertical lines.
    """
    model_config = ConfigDict(frozen=True)

    h_choice: WeightFunction = WeightFunction.GAUSSIAN_SHIFT
    contour_re: float = Field(2.0, gt=1.0)
    T: float = Field(..., gt=1.0)
    convention: MeasureConvention = MeasureConvention.DISPLAYED

    def h(self, w):
        w = np.asarray(w, dtype=complex)
        return np.exp((w - 1.0) ** 2)


class WeightRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    kappa: float
    weight: float


class PositivityRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    value: complex
    error_estimate: float = Field(ge=0)
    nonnegative: bool


class PositivityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    w: float
    mu: float
    ell: int
    t_nu: float
    rows: List[PositivityRow]
    all_nonnegative: bool
    worst_relative: float = Field(description="min over rows of Re K / |K|; 1 for a positive real kernel.")
