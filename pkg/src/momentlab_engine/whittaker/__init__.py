# Local L-factors, spherical Whittaker functions and their Mellin transforms,
# at finite places (unramified) and at archimedean places (Eisenstein).

from .archimedean import (
    arch_mellin_closed_form,
    arch_mellin_whittaker,
    bessel_k_mellin_check,
    w_eis_arch,
    whittaker_normalizer,
)
from .local_factors import (
    casselman_shalika,
    gl2_local_l_factor,
    hecke_local_integral,
    local_l_factor,
    local_moment_factor,
)
from .mellin import finite_mellin_whittaker, tate_brute_force_mellin
from .models import DifferentData, LocalCharacter, LocalSatakeData, MellinComparison, TruncatedSum

__all__ = [
    "LocalSatakeData",
    "LocalCharacter",
    "DifferentData",
    "TruncatedSum",
    "MellinComparison",
    "local_l_factor",
    "gl2_local_l_factor",
    "casselman_shalika",
    "hecke_local_integral",
    "local_moment_factor",
    "finite_mellin_whittaker",
    "tate_brute_force_mellin",
    "w_eis_arch",
    "whittaker_normalizer",
    "arch_mellin_whittaker",
    "arch_mellin_closed_form",
    "bessel_k_mellin_check",
]
