# Archimedean kernels: gamma-ratio kernels and main terms, their positive
# Bessel-integral counterparts, Eisenstein scalars and the Mellin identity check.

from .exact import (
    complex_place_profile,
    estimate_real_place_constant,
    k_exact_complex,
    k_exact_real,
    real_place_profile,
)
from .gamma_kernels import (
    a_complex,
    g_complex,
    g_real,
    k_asym_main,
    main_term_base,
    q_scalar,
    r_eisenstein,
    real_place_constant,
)
from .mellin_check import mellin_identity_check, seed_fourier_transform
from .models import (
    KIM_SHAHIDI_BOUND,
    KernelIntegral,
    KernelPoint,
    LocalCharacterParams,
    MainTerm,
    MeasureConvention,
    MellinCheck,
    SpectralParams,
)

__all__ = [
    "KIM_SHAHIDI_BOUND",
    "KernelPoint",
    "SpectralParams",
    "LocalCharacterParams",
    "MeasureConvention",
    "MainTerm",
    "KernelIntegral",
    "MellinCheck",
    "g_real",
    "g_complex",
    "a_complex",
    "main_term_base",
    "k_asym_main",
    "r_eisenstein",
    "q_scalar",
    "real_place_constant",
    "k_exact_complex",
    "k_exact_real",
    "complex_place_profile",
    "real_place_profile",
    "estimate_real_place_constant",
    "mellin_identity_check",
    "seed_fourier_transform",
]
