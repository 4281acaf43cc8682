# Desk-scale moment experiments: critical-line moments of zeta with their fits,
# smoothing weights built from the main-term kernels, and the positivity probe.

from .models import (
    CriticalLineIntegrals,
    MomentReport,
    PositivityReport,
    PositivityRow,
    WeightFunction,
    WeightRow,
    WeightSpec,
)
from .positivity import POSITIVITY_TOLERANCE, STANDARD_T_GRID, landau_positivity_probe
from .weights import smoothing_weight, smoothing_weight_table
from .zeta_moments import (
    DEFAULT_FIT_GRID,
    FOURTH_MOMENT_COEFFICIENT,
    MAX_HEIGHT,
    critical_line_integrals,
    fit_fourth_moment,
    fit_second_moment,
    fourth_moment_zeta,
    second_moment_main_term,
    second_moment_zeta,
)

__all__ = [
    "MomentReport",
    "CriticalLineIntegrals",
    "WeightFunction",
    "WeightSpec",
    "WeightRow",
    "PositivityRow",
    "PositivityReport",
    "MAX_HEIGHT",
    "DEFAULT_FIT_GRID",
    "FOURTH_MOMENT_COEFFICIENT",
    "critical_line_integrals",
    "second_moment_zeta",
    "fourth_moment_zeta",
    "second_moment_main_term",
    "fit_second_moment",
    "fit_fourth_moment",
    "smoothing_weight",
    "smoothing_weight_table",
    "POSITIVITY_TOLERANCE",
    "STANDARD_T_GRID",
    "landau_positivity_probe",
]
