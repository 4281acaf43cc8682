# Norm integrals over PGL(2): Cartan cell counts, the local integral and its bound,
# the global Euler product, and the archimedean dominating integral.

from .cells import BRUTE_FORCE_MAX_LEVEL, BRUTE_FORCE_PRIMES, brute_force_cell_count, cell_index
from .integrals import (
    archimedean_dominating_integral,
    global_norm_product_check,
    local_norm_integral,
    primes_up_to,
)
from .models import DominatingIntegral, EulerProductCheck, LocalNormIntegral, LocalNormParams, is_prime
from .norms import archimedean_norm, cartan_level, padic_norm, padic_valuation, primitive_representative

__all__ = [
    "LocalNormParams",
    "LocalNormIntegral",
    "EulerProductCheck",
    "DominatingIntegral",
    "is_prime",
    "BRUTE_FORCE_PRIMES",
    "BRUTE_FORCE_MAX_LEVEL",
    "cell_index",
    "brute_force_cell_count",
    "local_norm_integral",
    "global_norm_product_check",
    "archimedean_dominating_integral",
    "primes_up_to",
    "archimedean_norm",
    "padic_norm",
    "padic_valuation",
    "primitive_representative",
    "cartan_level",
]
