# Classical Poincare and Eisenstein series over Q: coset sums, Fourier oracle,
# convergence probes and the Eisenstein domination check.

from .models import (
    CauchyReport,
    DominationReport,
    DominationRow,
    PartialSumRow,
    SeriesTruncation,
    SeriesValue,
    UpperHalfPoint,
)
from .probes import DEFAULT_LADDER, cauchy_convergence_probe, domination_check
from .series import (
    as_upper_half_point,
    eisenstein_fourier_Q,
    eisenstein_tail,
    eval_eisenstein_Q,
    eval_poincare_Q,
    leading_term_ratio,
    partial_sum_table,
    seed_mass,
    translation_sum,
)

__all__ = [
    "UpperHalfPoint",
    "SeriesTruncation",
    "SeriesValue",
    "PartialSumRow",
    "CauchyReport",
    "DominationRow",
    "DominationReport",
    "DEFAULT_LADDER",
    "as_upper_half_point",
    "eval_poincare_Q",
    "eval_eisenstein_Q",
    "eisenstein_fourier_Q",
    "eisenstein_tail",
    "leading_term_ratio",
    "partial_sum_table",
    "seed_mass",
    "translation_sum",
    "cauchy_convergence_probe",
    "domination_check",
]
