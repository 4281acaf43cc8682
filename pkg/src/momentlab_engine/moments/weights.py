import logging
import math
from typing import Iterable, List, Optional, Union

import numpy as np

from ..core.config_loader import load_app_config
from ..core.exceptions import CheckFailure
from ..core.parallel import ordered_map
from ..fields import HeckeCharacter, NumberField, PlaceType, kappa_chi
from ..kernels import LocalCharacterParams, MeasureConvention, SpectralParams, a_complex, main_term_base
from ..numerics import DecayHint, QuadratureSpec, integrate_vertical_line, resolve_spec
from .models import WeightRow, WeightSpec

logger = logging.getLogger(__name__)

# Imaginary part tolerated in a weight before the integrand is declared asymmetric.
REALITY_TOLERANCE = 1e-8


def _spectral(mu: Union[complex, SpectralParams]) -> SpectralParams:
    return mu if isinstance(mu, SpectralParams) else SpectralParams.diagonal(complex(mu))


def _place_bases(field: NumberField, chi: HeckeCharacter, t: float) -> List[float]:
    bases = []
    for index, place_type in enumerate(field.place_types):
        ell = chi.ell_values[index - field.r1] if place_type == PlaceType.COMPLEX else 0
        local = LocalCharacterParams(t_nu=chi.t_values[index], ell_nu=ell)
        bases.append(float(main_term_base(place_type, t, local)))
    return bases


def smoothing_weight(
    field: NumberField,
    chi: HeckeCharacter,
    mu: Union[complex, SpectralParams],
    t: float,
    spec: WeightSpec,
    quad_spec: Optional[QuadratureSpec] = None,
) -> float:
    """
    Smoothed weight (1 / 2 pi i) int_{Re w = L} K(1/2 + it, 0, w, chi) h(w) T^w dw.

    K is the product over archimedean places of the main-term kernels at v = 0:
    (1 + |t + t_v|)^{-w} at real places and pi a_complex(0, w, mu) (1 + ell^2 + 4 (t + t_v)^2)^{-w}
    at complex places (times 4^{-w} under the ``integral`` convention). The product of the
    bases is kappa_chi(t), so the weight depends on t through T / kappa_chi(t) only.

    Args:
        field (NumberField): The field.
        chi (HeckeCharacter): Character whose archimedean parameters shift t.
        mu (complex or SpectralParams): Spectral parameter, shared by all places.
        t (float): Spectral height.
        spec (WeightSpec): Weight function, contour and T.
        quad_spec (Optional[QuadratureSpec]): Tolerances of the vertical-line rule.

    Returns:
        float: The weight; the integrand is conjugate-symmetric, so the result is real.

    Raises:
        CheckFailure: If the imaginary part exceeds 1e-8 of the magnitude.
        QuadratureError: If the contour integral does not converge.
    """
    quad_spec = resolve_spec(quad_spec)
    mu = _spectral(mu)
    log_ratio = math.log(spec.T) - math.fsum(math.log(b) for b in _place_bases(field, chi, t))
    complex_places = field.r2
    scale = 4.0 if spec.convention == MeasureConvention.INTEGRAL else 1.0

    def integrand(w: np.ndarray) -> np.ndarray:
        values = spec.h(w) * np.exp(w * (log_ratio - complex_places * math.log(scale)))
        if complex_places:
            values = values * (math.pi * a_complex(0.0, w, mu)) ** complex_places
        return values

    result = integrate_vertical_line(integrand, spec.contour_re, quad_spec, DecayHint.GAUSSIAN)
    value = result.value
    if abs(value.imag) > REALITY_TOLERANCE * max(abs(value), 1e-300):
        raise CheckFailure(
            "moments.weight_reality",
            measured=abs(value.imag) / abs(value),
            threshold=REALITY_TOLERANCE,
            message=f"smoothing weight at t={t:g} is not real.",
        )
    logger.debug("smoothing_weight(%s, t=%g, T=%g) = %.6e", field.name, t, spec.T, value.real)
    return float(value.real)


def smoothing_weight_table(
    field: NumberField,
    chi: HeckeCharacter,
    mu: Union[complex, SpectralParams],
    t_grid: Iterable[float],
    spec: WeightSpec,
    quad_spec: Optional[QuadratureSpec] = None,
    workers: Optional[int] = None,
) -> List[WeightRow]:
    """Rows (t, kappa_chi(t), weight) over a t-grid, in grid order."""
    workers = workers if workers is not None else load_app_config().execution.workers
    t_values = [float(t) for t in t_grid]
    weights = ordered_map(lambda t: smoothing_weight(field, chi, mu, t, spec, quad_spec), t_values, workers)
    return [
        WeightRow(t=t, kappa=float(kappa_chi(field, chi, t)), weight=weight)
        for t, weight in zip(t_values, weights)
    ]
