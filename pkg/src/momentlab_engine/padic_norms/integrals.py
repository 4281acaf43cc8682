import logging
import math
from typing import Optional

import numpy as np

from ..core.exceptions import DivergenceError, DomainError
from ..numerics import DecayHint, QuadratureSpec, integrate_halfline, resolve_spec, zeta
from .cells import cell_index
from .models import DominatingIntegral, EulerProductCheck, LocalNormIntegral, LocalNormParams

logger = logging.getLogger(__name__)

DIRECT_SUM_TAIL = 1e-15
_MAX_LEVELS = 100_000


def local_norm_integral(params: LocalNormParams) -> LocalNormIntegral:
    """
    Integral of ||g||^{-sigma} over PGL(2) of a p-adic field with meas(K) = 1.

    Sums the Cartan cells exactly, 1 + (q + 1) q^{-sigma} / (1 - q^{1-sigma}), and
    reports the cruder bound (1 + q^{2-sigma}) / (1 - q^{1-sigma}) obtained from
    q^2 q^(ell - 1) cosets per cell. The closed form is cross-checked by summing the
    cells one level at a time until the geometric tail is below 1e-15.

    Raises:
        DivergenceError: For sigma <= 1.
    """
    q, sigma = params.q, params.sigma
    r = float(q) ** (1.0 - sigma)
    if sigma <= 1.0:
        raise DivergenceError(
            f"The norm integral diverges for sigma <= 1 (sigma = {sigma:g}).", partial_sum=None, tail_bound=math.inf
        )
    exact = 1.0 + (q + 1) * float(q) ** (-sigma) / (1.0 - r)
    bound = (1.0 + float(q) ** (2.0 - sigma)) / (1.0 - r)

    # level ell contributes (q + 1)/q * r^ell; the tail after level L is (q + 1)/q * r^(L+1) / (1 - r)
    levels = 1
    while (q + 1) / q * r ** (levels + 1) / (1.0 - r) > DIRECT_SUM_TAIL:
        levels += 1
        if levels > _MAX_LEVELS:
            raise DivergenceError(
                f"Direct cell summation needs more than {_MAX_LEVELS} levels (q={q}, sigma={sigma:g}).",
                partial_sum=None,
                tail_bound=(q + 1) / q * r ** (levels + 1) / (1.0 - r),
            )
    terms = [cell_index(q, ell) * float(q) ** (-sigma * ell) for ell in range(levels + 1)]
    direct = math.fsum(terms)
    tail = (q + 1) / q * r ** (levels + 1) / (1.0 - r)
    return LocalNormIntegral(
        q=q, sigma=sigma, exact=exact, upper_bound=bound, direct_sum=direct, levels=levels, tail_bound=tail
    )


def primes_up_to(bound: int) -> np.ndarray:
    """Primes p <= bound by the sieve of Eratosthenes."""
    if bound < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


def global_norm_product_check(a: float, b: float, prime_bound: int) -> EulerProductCheck:
    """
    Truncated Euler product prod_{p <= bound} (1 + p^{-a}) / (1 - p^{-b}) against
    zeta(a) zeta(b) / zeta(2a).

    The product is accumulated in log form with an exactly rounded sum.

    Raises:
        DomainError: Unless a > 1 and b > 1.
    """
    if a <= 1.0 or b <= 1.0:
        raise DomainError(f"global_norm_product_check needs a, b > 1, got a={a:g}, b={b:g}.")
    primes = primes_up_to(int(prime_bound)).astype(float)
    logs = np.log1p(primes ** (-a)) - np.log1p(-(primes ** (-b)))
    product = math.exp(math.fsum(logs.tolist()))
    zeta_form = float((zeta(a) * zeta(b) / zeta(2.0 * a)).real)
    gap = abs(product - zeta_form)
    logger.debug("Euler product a=%g, b=%g over %d primes: gap %.3e", a, b, primes.size, gap)
    return EulerProductCheck(
        a=a, b=b, prime_bound=int(prime_bound), primes=int(primes.size), product=product, zeta_form=zeta_form, gap=gap
    )


def archimedean_dominating_integral(
    d: float, sigma: float, spec: Optional[QuadratureSpec] = None
) -> DominatingIntegral:
    """
    int over R^x of max(|x|, 1/|x|)^{d - sigma} dx = 2 (1/(sigma - d - 1) + 1/(sigma - d + 1)).

    The quadrature samples the profile itself on x > 0 and doubles it. The kink at
    x = 1 is kept at the end of both pieces: x = 1 + u covers (1, inf) and
    x = 1/(1 + u) covers (0, 1), each integrated over u in (0, inf).

    Raises:
        DivergenceError: For sigma <= d + 1.
    """
    spec = resolve_spec(spec)
    if sigma <= d + 1.0:
        raise DivergenceError(
            f"The dominating integral diverges for sigma <= d + 1 (d={d:g}, sigma={sigma:g}).",
            partial_sum=None,
            tail_bound=math.inf,
        )

    def profile(x: np.ndarray) -> np.ndarray:
        return np.maximum(np.abs(x), 1.0 / np.abs(x)) ** (d - sigma)

    closed = 2.0 * (1.0 / (sigma - d - 1.0) + 1.0 / (sigma - d + 1.0))
    outer = integrate_halfline(lambda u: profile(1.0 + u), spec, DecayHint.ALGEBRAIC)
    inner = integrate_halfline(lambda u: profile(1.0 / (1.0 + u)) / (1.0 + u) ** 2, spec, DecayHint.ALGEBRAIC)
    return DominatingIntegral(
        d=d,
        sigma=sigma,
        closed_form=closed,
        quadrature=2.0 * (inner.value.real + outer.value.real),
        error_estimate=2.0 * (inner.error_estimate + outer.error_estimate),
    )
