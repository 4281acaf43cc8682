import logging
import math
from typing import Sequence, Tuple

import numpy as np

from ..core.exceptions import PoleError
from ..fields.models import NumberField, PlaceType
from ..numerics import gamma_ratio, is_gamma_pole
from .models import LocalCharacterParams, MainTerm, MeasureConvention, SpectralParams

logger = logging.getLogger(__name__)

PI = math.pi
TWO_PI = 2.0 * math.pi


def _ratio(kernel: str, numerator: Sequence[Tuple[str, complex]], denominator: Sequence[complex]) -> complex:
    # gamma_ratio only reports the bad argument; name the factor as written in the kernel
    for label, arg in numerator:
        if is_gamma_pole(arg):
            raise PoleError(f"{kernel}: Gamma({label})", f"argument {complex(arg)} is a nonpositive integer.")
    return gamma_ratio([arg for _, arg in numerator], denominator)


def _real_numerator(s: complex, v: complex, w: complex):
    return [
        ("(v+1-s)/2", (v + 1 - s) / 2),
        ("(v+w-s)/2", (v + w - s) / 2),
        ("(v+s)/2", (v + s) / 2),
        ("(v+w+s-1)/2", (v + w + s - 1) / 2),
    ]


def _complex_numerator(s: complex, v: complex, w: complex):
    return [
        ("v+1-s", v + 1 - s),
        ("v+w-s", v + w - s),
        ("v+s", v + s),
        ("v+w+s-1", v + w + s - 1),
    ]


def g_real(s: complex, v: complex, w: complex) -> complex:
    """
    Real-place kernel
    pi^{-v} G((v+1-s)/2) G((v+w-s)/2) G((v+s)/2) G((v+w+s-1)/2) / (G(w/2) G(v+w/2)).

    Invariant under s -> 1 - s.

    Raises:
        PoleError: If a numerator gamma argument is a nonpositive integer.
    """
    s, v, w = complex(s), complex(v), complex(w)
    return PI ** (-v) * _ratio("g_real", _real_numerator(s, v, w), [w / 2, v + w / 2])


def g_complex(s: complex, v: complex, w: complex) -> complex:
    """
    Complex-place kernel
    (2 pi)^{-2v} G(v+1-s) G(v+w-s) G(v+s) G(v+w+s-1) / (G(w) G(2v+w)).

    Raises:
        PoleError: If a numerator gamma argument is a nonpositive integer.
    """
    s, v, w = complex(s), complex(v), complex(w)
    return TWO_PI ** (-2 * v) * _ratio("g_complex", _complex_numerator(s, v, w), [w, 2 * v + w])


def _a_complex_scalar(v: complex, w: complex, mu1: complex, mu2: complex) -> complex:
    i_mu1 = 1j * mu1
    i_mu2bar = 1j * complex(mu2).conjugate()
    base = w + v
    numerator = [
        ("w+v+i mu1+i conj(mu2)", base + i_mu1 + i_mu2bar),
        ("w+v-i mu1+i conj(mu2)", base - i_mu1 + i_mu2bar),
        ("w+v+i mu1-i conj(mu2)", base + i_mu1 - i_mu2bar),
        ("w+v-i mu1-i conj(mu2)", base - i_mu1 - i_mu2bar),
    ]
    return 2.0 ** (4 * w - 4 * v - 4) * _ratio("a_complex", numerator, [2 * w + 2 * v])


_a_complex_vector = np.vectorize(_a_complex_scalar, otypes=[complex])


def a_complex(v: complex, w, mu: SpectralParams):
    """
    Gamma-ratio constant of the complex-place main term,
    2^{4w-4v-4} prod_{+-,+-} G(w + v +- i mu1 +- i conj(mu2)) / G(2w + 2v).

    Args:
        v (complex): Twist exponent.
        w (complex or numpy.ndarray): Weight exponent(s); arrays are evaluated elementwise.
        mu (SpectralParams): Local spectral parameters.

    Raises:
        PoleError: If a numerator argument is a nonpositive integer.
    """
    if np.ndim(w) == 0:
        return _a_complex_scalar(complex(v), complex(w), mu.mu1, mu.mu2)
    return _a_complex_vector(complex(v), np.asarray(w, dtype=complex), mu.mu1, mu.mu2)


def main_term_base(place_type: PlaceType, t, chi: LocalCharacterParams):
    """1 + |t + t_nu| at a real place, 1 + ell^2 + 4 (t + t_nu)^2 at a complex place."""
    shifted = np.asarray(t, dtype=float) + chi.t_nu
    if place_type == PlaceType.REAL:
        return 1.0 + np.abs(shifted)
    return 1.0 + chi.ell_nu**2 + 4.0 * shifted * shifted


def k_asym_main(
    place_type: PlaceType,
    t: float,
    v: complex,
    w: complex,
    chi: LocalCharacterParams,
    mu: SpectralParams,
    convention: MeasureConvention = MeasureConvention.DISPLAYED,
) -> MainTerm:
    """
    Asymptotic main term of the archimedean kernel at one place.

    Complex place: pi^{1-2v} a_complex(v, w, mu) (1 + ell^2 + 4 (t + t_nu)^2)^{-w},
    times 4^{-w} under the ``integral`` convention.
    Real place: (1 + |t + t_nu|)^{-w} with the gamma-ratio constant normalised to 1.

    Args:
        place_type (PlaceType): Type of the archimedean place.
        t (float): Spectral height.
        v (complex): Twist exponent.
        w (complex): Weight exponent.
        chi (LocalCharacterParams): Local parameters (t_nu, ell_nu) of the character.
        mu (SpectralParams): Local spectral parameters.
        convention (MeasureConvention): Normalisation of the complex-place term.

    Returns:
        MainTerm: The value with its normalisation flags.

    Raises:
        PoleError: From a_complex.
    """
    v, w = complex(v), complex(w)
    base = float(main_term_base(place_type, t, chi))
    if place_type == PlaceType.REAL:
        return MainTerm(place_type=place_type, value=base ** (-w), constant_normalized=True, convention=convention)
    value = PI ** (1 - 2 * v) * a_complex(v, w, mu) * base ** (-w)
    if convention == MeasureConvention.INTEGRAL:
        value *= 4.0 ** (-w)
    return MainTerm(place_type=place_type, value=value, convention=convention)


def r_eisenstein(field: NumberField, w: complex) -> complex:
    """
    Scalar of the subtracted Eisenstein term,
    prod_real sqrt(pi) G((w-1)/2) / G(w/2) * prod_complex 2 pi / (w - 1).

    Has a pole of order r1 + r2 at w = 1.

    Raises:
        PoleError: At w = 1, or where (w-1)/2 is a nonpositive integer.
    """
    w = complex(w)
    if w == 1:
        raise PoleError("r_eisenstein", "pole of order r1 + r2 at w = 1.")
    real_factor = math.sqrt(PI) * _ratio("r_eisenstein", [("(w-1)/2", (w - 1) / 2)], [w / 2])
    complex_factor = TWO_PI / (w - 1)
    return real_factor**field.r1 * complex_factor**field.r2


def q_scalar(field: NumberField, s: complex, v: complex, w: complex) -> complex:
    """
    Archimedean scalar of the Eisenstein coefficient: the product over places of
    g_real / (pi^{-s} G(s)) at real places and g_complex / ((2 pi)^{-2s-1} G(2s))
    at complex places.

    Raises:
        PoleError: If a kernel numerator hits a pole.
    """
    s, v, w = complex(s), complex(v), complex(w)
    value = 1.0 + 0j
    if field.r1:
        real = PI ** (s - v) * _ratio("q_scalar", _real_numerator(s, v, w), [w / 2, v + w / 2, s])
        value *= real**field.r1
    if field.r2:
        cplx = TWO_PI ** (2 * s + 1 - 2 * v) * _ratio(
            "q_scalar", _complex_numerator(s, v, w), [w, 2 * v + w, 2 * s]
        )
        value *= cplx**field.r2
    return value


def real_place_constant(w: complex, mu: complex) -> complex:
    """
    Limit of the positive real-place integral over the normalised main term as t grows:
    2^{w-2} G((w+1)/2 + i mu) G((w+1)/2)^2 G((w+1)/2 - i mu) / (pi G(w+1)).
    """
    w, mu = complex(w), complex(mu)
    half = (w + 1) / 2
    numerator = [
        ("(w+1)/2+i mu", half + 1j * mu),
        ("(w+1)/2", half),
        ("(w+1)/2", half),
        ("(w+1)/2-i mu", half - 1j * mu),
    ]
    return 2.0 ** (w - 2) * _ratio("real_place_constant", numerator, [w + 1]) / PI
