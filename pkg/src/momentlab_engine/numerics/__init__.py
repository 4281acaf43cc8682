# Complex special functions and quadrature engines used by every other module.

from .bessel import bessel_j, bessel_k
from .gamma import gamma, gamma_r, gamma_ratio, is_gamma_pole, log_gamma
from .models import ComplexValue, DecayHint, QuadratureResult, QuadratureSpec, resolve_spec
from .quadrature import (
    gauss_legendre_panels,
    integrate_halfline,
    integrate_halfline_rows,
    integrate_vertical_line,
)
from .zeta import zeta, zeta_critical_line

__all__ = [
    "ComplexValue",
    "DecayHint",
    "QuadratureSpec",
    "QuadratureResult",
    "resolve_spec",
    "gamma",
    "log_gamma",
    "gamma_ratio",
    "gamma_r",
    "is_gamma_pole",
    "bessel_k",
    "bessel_j",
    "integrate_halfline",
    "integrate_halfline_rows",
    "integrate_vertical_line",
    "gauss_legendre_panels",
    "zeta",
    "zeta_critical_line",
]
