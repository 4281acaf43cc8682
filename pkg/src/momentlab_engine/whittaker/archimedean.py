import logging
import math
from typing import Optional

import numpy as np

from ..core.exceptions import DomainError
from ..fields.models import PlaceType
from ..numerics import (
    DecayHint,
    QuadratureSpec,
    bessel_k,
    gamma,
    gamma_r,
    gamma_ratio,
    integrate_halfline,
    resolve_spec,
)
from .models import MellinComparison

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def whittaker_normalizer(place_type: PlaceType, s: complex) -> complex:
    """pi^{-s} Gamma(s) at a real place, (2 pi)^{-2s} Gamma(2s) at a complex place."""
    s = complex(s)
    if place_type == PlaceType.REAL:
        return math.pi ** (-s) * gamma(s)
    return TWO_PI ** (-2 * s) * gamma(2 * s)


def w_eis_arch(place_type: PlaceType, s: complex, a):
    """
    Normalised Eisenstein Whittaker function at an archimedean place.

    Real place: 2 |a|^{1/2} K_{s-1/2}(2 pi |a|) / (pi^{-s} Gamma(s)).
    Complex place: 2 |a| K_{2s-1}(4 pi |a|) / ((2 pi)^{-2s} Gamma(2s)).

    Args:
        place_type (PlaceType): Type of the place.
        s (complex): Spectral variable.
        a (float or numpy.ndarray): Nonzero argument(s); only |a| matters.

    Returns:
        complex or numpy.ndarray: Values with the shape of ``a``.

    Raises:
        DomainError: If some a = 0.
        PoleError: If the normalising gamma factor has a pole.
    """
    s = complex(s)
    scalar = np.ndim(a) == 0
    r = np.abs(np.asarray(a, dtype=float))
    if np.any(r == 0.0):
        raise DomainError("w_eis_arch is not defined at a = 0.")
    norm = whittaker_normalizer(place_type, s)
    if place_type == PlaceType.REAL:
        values = 2.0 * np.sqrt(r) * np.asarray(bessel_k(s - 0.5, r * TWO_PI)) / norm
    else:
        values = 2.0 * r * np.asarray(bessel_k(2 * s - 1, 2.0 * TWO_PI * r)) / norm
    return complex(values) if scalar else values


def arch_mellin_closed_form(place_type: PlaceType, s: complex, v: complex) -> complex:
    """
    Gamma closed form of the Mellin transform of w_eis_arch over k^x:
    Gamma_R(v+s) Gamma_R(v+1-s) / Gamma_R(2s) at a real place and
    (2 pi)^{-2v} Gamma(v+s) Gamma(v+1-s) / ((2 pi)^{-2s} Gamma(2s)) at a complex place.
    """
    s, v = complex(s), complex(v)
    if place_type == PlaceType.REAL:
        return gamma_r(v + s) * gamma_r(v + 1 - s) / gamma_r(2 * s)
    return TWO_PI ** (2 * s - 2 * v) * gamma_ratio([v + s, v + 1 - s], [2 * s])


def _check_strip(s: complex, v: complex) -> None:
    if (v + 0.5).real <= abs((s - 0.5).real):
        raise DomainError(f"Mellin transform of w_eis_arch diverges at 0 for s = {s}, v = {v}.")


def arch_mellin_whittaker(
    place_type: PlaceType,
    s: complex,
    v: complex,
    spec: Optional[QuadratureSpec] = None,
) -> MellinComparison:
    """
    Quadrature of int_{k^x} |a|^v w_eis_arch(s, a) d^x a against the gamma closed form.

    The real place integrates over both signs (factor 2); the complex place uses
    |z|_C = r^2 and d^x z = 2 dr d theta / r (factor 4 pi).

    Raises:
        DomainError: Outside the strip Re v + 1/2 > |Re s - 1/2|.
        QuadratureError: If the half-line rule does not converge.
    """
    spec = resolve_spec(spec)
    s, v = complex(s), complex(v)
    _check_strip(s, v)
    if place_type == PlaceType.REAL:
        factor, power, scale = 2.0, v, 1.0 / TWO_PI
    else:
        factor, power, scale = 4.0 * math.pi, 2 * v, 1.0 / (2.0 * TWO_PI)

    def integrand(a: np.ndarray) -> np.ndarray:
        return a ** (power - 1.0) * w_eis_arch(place_type, s, a)

    result = integrate_halfline(integrand, spec, DecayHint.EXPONENTIAL, scale=scale)
    quadrature = factor * result.value
    closed = arch_mellin_closed_form(place_type, s, v)
    gap = abs(quadrature - closed) / abs(closed)
    logger.debug("arch_mellin_whittaker(%s, s=%s, v=%s): gap %.2e", place_type.value, s, v, gap)
    return MellinComparison(
        quadrature=quadrature,
        closed_form=closed,
        relative_gap=gap,
        error_estimate=factor * result.error_estimate,
    )


def bessel_k_mellin_check(mu: complex, s: complex, spec: Optional[QuadratureSpec] = None) -> MellinComparison:
    """
    int_0^inf K_mu(2 pi a) a^s da / a against (1/4) pi^{-s} Gamma((s+mu)/2) Gamma((s-mu)/2).

    Raises:
        DomainError: Unless Re s > |Re mu|.
    """
    spec = resolve_spec(spec)
    mu, s = complex(mu), complex(s)
    if s.real <= abs(mu.real):
        raise DomainError(f"bessel_k_mellin_check needs Re s > |Re mu|, got s = {s}, mu = {mu}.")
    result = integrate_halfline(
        lambda a: bessel_k(mu, TWO_PI * a) * a ** (s - 1.0), spec, DecayHint.EXPONENTIAL, scale=1.0 / TWO_PI
    )
    closed = 0.25 * math.pi ** (-s) * gamma_ratio([(s + mu) / 2, (s - mu) / 2])
    return MellinComparison(
        quadrature=result.value,
        closed_form=closed,
        relative_gap=abs(result.value - closed) / abs(closed),
        error_estimate=result.error_estimate,
    )
