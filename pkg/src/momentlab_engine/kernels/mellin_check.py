import logging
import math
from typing import Optional

import numpy as np

from ..core.exceptions import DomainError
from ..fields.models import PlaceType
from ..numerics import DecayHint, QuadratureSpec, gamma, integrate_halfline, integrate_halfline_rows, resolve_spec
from ..whittaker import w_eis_arch, whittaker_normalizer
from .gamma_kernels import g_complex, g_real
from .models import MellinCheck

logger = logging.getLogger(__name__)

# Inner integrals are held to a tighter tolerance than the outer Mellin integral.
_INNER_TIGHTENING = 10.0


def seed_fourier_transform(place_type: PlaceType, w: complex, a, spec: Optional[QuadratureSpec] = None) -> np.ndarray:
    """
    Fourier transform of the seed (1 + x^2)^{-w/2} (real place) or (1 + |z|^2)^{-w}
    (complex place, doubled additive measure), evaluated at |xi| = a.

    Writes the seed as a gamma integral, (1/Gamma(w/2)) int u^{w/2-1} e^{-u(1+x^2)} du,
    and transforms the Gaussian under the integral sign; the remaining u-integrals are
    computed together, one row per value of a.

    Raises:
        DomainError: Unless Re w > 1.
        QuadratureError: If some row does not converge.
    """
    spec = resolve_spec(spec)
    w = complex(w)
    if w.real <= 1.0:
        raise DomainError("The seed is integrable only for Re w > 1.")
    a = np.atleast_1d(np.asarray(a, dtype=float)).ravel()
    if place_type == PlaceType.REAL:
        coeff = math.sqrt(math.pi) / gamma(w / 2)
        power = w / 2 - 1.5
        spread = math.pi * a
    else:
        coeff = 2.0 * math.pi / gamma(w)
        power = w - 2.0
        spread = 2.0 * math.pi * a
    quad = spread[:, None] ** 2

    def rows(u: np.ndarray) -> np.ndarray:
        return u**power * np.exp(-u - quad / u)

    values, _ = integrate_halfline_rows(rows, np.maximum(1.0, spread), spec)
    return coeff * values


def mellin_identity_check(
    place_type: PlaceType,
    s: complex,
    v: complex,
    w: complex,
    spec: Optional[QuadratureSpec] = None,
) -> MellinCheck:
    """
    Compares the Mellin integral of the seed's Fourier transform against the Eisenstein
    Whittaker function with its gamma closed form.

    Real place: 2 int_0^inf a^v Phi^(a) W(a) da / a = g_real(s, v, w) / (pi^{-s} Gamma(s)).
    Complex place: 4 pi int_0^inf r^{2v} Phi^(r) W(r) dr / r = g_complex(s, v, w) / ((2 pi)^{-2s-1} Gamma(2s)).

    Args:
        place_type (PlaceType): Type of the place.
        s (complex): Spectral variable.
        v (complex): Twist exponent.
        w (complex): Seed exponent, Re w > 1.
        spec (Optional[QuadratureSpec]): Tolerances of the outer integral.

    Returns:
        MellinCheck: Both sides and their relative gap.

    Raises:
        DomainError: Outside Re w > 1 and Re v + 1/2 > |Re s - 1/2|.
        QuadratureError: From the nested rules.
    """
    spec = resolve_spec(spec)
    s, v, w = complex(s), complex(v), complex(w)
    if (v + 0.5).real <= abs((s - 0.5).real):
        raise DomainError(f"mellin_identity_check diverges at 0 for s = {s}, v = {v}.")
    inner = spec.tightened(_INNER_TIGHTENING)
    if place_type == PlaceType.REAL:
        factor, power, scale = 2.0, v, 1.0 / (2.0 * math.pi)
        rhs = g_real(s, v, w) / whittaker_normalizer(place_type, s)
    else:
        factor, power, scale = 4.0 * math.pi, 2 * v, 1.0 / (4.0 * math.pi)
        rhs = g_complex(s, v, w) * 2.0 * math.pi / whittaker_normalizer(place_type, s)

    def integrand(a: np.ndarray) -> np.ndarray:
        out = np.zeros(a.shape, dtype=complex)
        # the transform and the Whittaker function both vanish to double precision out here
        keep = a < 40.0
        if keep.any():
            x = a[keep]
            out[keep] = x ** (power - 1.0) * seed_fourier_transform(place_type, w, x, inner) * w_eis_arch(place_type, s, x)
        return out

    result = integrate_halfline(integrand, spec, DecayHint.EXPONENTIAL, scale=scale)
    lhs = factor * result.value
    gap = abs(lhs - rhs) / abs(rhs)
    logger.debug("mellin_identity_check(%s, s=%s, v=%s, w=%s): gap %.2e", place_type.value, s, v, w, gap)
    return MellinCheck(
        place_type=place_type,
        lhs=lhs,
        rhs=rhs,
        relative_gap=gap,
        error_estimate=factor * result.error_estimate,
    )
