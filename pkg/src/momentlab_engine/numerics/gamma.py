import logging
from typing import Iterable, Sequence

import numpy as np
from scipy.special import bernoulli

from ..core.exceptions import DomainError, NumericOverflowError, PoleError
from .models import ArrayLike, as_complex_array, ensure_finite, restore

logger = logging.getLogger(__name__)

# Lanczos approximation with g = 7, n = 9.
LANCZOS_G = 7.0
_LANCZOS_COEFFS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])

_HALF_LOG_TWO_PI = 0.5 * np.log(2.0 * np.pi)
_LOG_DOUBLE_MAX = 709.0

# Above this imaginary part the Lanczos sum loses accuracy and Stirling takes over.
STIRLING_IMAG_SWITCH = 30.0
# Stirling is applied at |z| >= this radius, after upward recurrence.
_STIRLING_RADIUS = 15.0
_STIRLING_TERMS = 12
_B2K = bernoulli(2 * _STIRLING_TERMS)[2::2]
_STIRLING_COEFFS = np.array(
    [_B2K[k - 1] / ((2 * k) * (2 * k - 1)) for k in range(1, _STIRLING_TERMS + 1)]
)


def is_gamma_pole(z: complex) -> bool:
    """True when ``z`` is a nonpositive integer (to double precision)."""
    z = complex(z)
    if z.imag != 0.0 or z.real > 0.5:
        return False
    return abs(z.real - round(z.real)) < 1e-14


def _pole_mask(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0.0) & (z.real <= 0.0) & (np.abs(z.real - np.round(z.real)) < 1e-14)


def _lanczos_log(z: np.ndarray) -> np.ndarray:
    # Valid for Re z >= 1/2. Not the principal branch of log Gamma.
    zm = z - 1.0
    series = np.full_like(zm, _LANCZOS_COEFFS[0])
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series = series + c / (zm + i)
    t = zm + LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (zm + 0.5) * np.log(t) - t + np.log(series)


def _stirling_log(z: np.ndarray) -> np.ndarray:
    """Principal log Gamma for Re z > 0 via recurrence up to |z| >= 15 and Stirling's series."""
    shift = np.maximum(0, np.ceil(_STIRLING_RADIUS - z.real)).astype(int)
    shift = np.where(np.abs(z) >= _STIRLING_RADIUS, 0, shift)
    zz = z + shift
    correction = np.zeros_like(z)
    for j in range(int(shift.max(initial=0))):
        active = shift > j
        correction = correction + np.where(active, np.log(np.where(active, z + j, 1.0)), 0.0)
    inv = 1.0 / zz
    inv2 = inv * inv
    tail = np.zeros_like(zz)
    power = inv
    for c in _STIRLING_COEFFS:
        tail = tail + c * power
        power = power * inv2
    return (zz - 0.5) * np.log(zz) - zz + _HALF_LOG_TWO_PI + tail - correction


def _log_gamma_any_branch(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        zr = z[right]
        vals = np.empty_like(zr)
        steep = np.abs(zr.imag) > STIRLING_IMAG_SWITCH
        if np.any(~steep):
            vals[~steep] = _lanczos_log(zr[~steep])
        if np.any(steep):
            vals[steep] = _stirling_log(zr[steep])
        out[right] = vals
    if np.any(~right):
        zl = z[~right]
        # Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        out[~right] = np.log(np.pi) - np.log(np.sin(np.pi * zl)) - _log_gamma_any_branch(1.0 - zl)
    return out


def gamma(z: ArrayLike):
    """
    Complex gamma function.

    Lanczos (g = 7) for moderate imaginary part, Stirling's series beyond
    |Im z| = 30, the reflection formula for Re z < 1/2.

    Args:
        z (ArrayLike): Scalar or numpy array of arguments.

    Returns:
        complex or numpy.ndarray: Gamma(z), same shape as the input.

    Raises:
        PoleError: If any argument is a nonpositive integer.
        NumericOverflowError: If |Gamma(z)| exceeds double range (use log_gamma).
    """
    arr, scalar = as_complex_array(z)
    shape = np.shape(z)
    if np.any(_pole_mask(arr)):
        bad = arr[_pole_mask(arr)][0]
        raise PoleError(f"Gamma({bad.real:g})", "nonpositive integer argument.")
    logs = _log_gamma_any_branch(arr)
    if np.any(logs.real > _LOG_DOUBLE_MAX):
        raise NumericOverflowError("Gamma overflows double precision; use log_gamma.")
    return restore(np.exp(logs), scalar, shape)


def log_gamma(z: ArrayLike):
    """
    Principal branch of log Gamma(z) for Re z > 0, continuous along vertical lines.

    Raises:
        DomainError: If Re z <= 0 for any argument.
    """
    arr, scalar = as_complex_array(z)
    shape = np.shape(z)
    if np.any(arr.real <= 0.0):
        raise DomainError("log_gamma is implemented for Re z > 0 only.")
    return restore(ensure_finite(_stirling_log(arr), "log_gamma"), scalar, shape)


def gamma_ratio(numerator: Iterable[complex], denominator: Sequence[complex] = ()) -> complex:
    """
    Product of gamma values over a product of gamma values, assembled in log form.

    A denominator argument at a pole makes the ratio vanish; numerator poles raise.

    Args:
        numerator (Iterable[complex]): Arguments of the gamma factors on top.
        denominator (Sequence[complex]): Arguments of the gamma factors below.

    Returns:
        complex: The ratio.

    Raises:
        PoleError: If a numerator argument is a pole.
        NumericOverflowError: If the ratio overflows.
    """
    numerator = [complex(a) for a in numerator]
    denominator = [complex(b) for b in denominator]
    for a in numerator:
        if is_gamma_pole(a):
            raise PoleError(f"Gamma({a.real:g})", "numerator factor at a pole.")
    if any(is_gamma_pole(b) for b in denominator):
        return 0j
    total = complex(np.sum(_log_gamma_any_branch(np.array(numerator, dtype=complex)))) if numerator else 0j
    if denominator:
        total -= complex(np.sum(_log_gamma_any_branch(np.array(denominator, dtype=complex))))
    if total.real > _LOG_DOUBLE_MAX:
        raise NumericOverflowError("Gamma ratio overflows double precision.")
    return complex(np.exp(total))


def gamma_r(z: complex) -> complex:
    """Real-place gamma factor pi^{-z/2} Gamma(z/2)."""
    return complex(np.pi ** (-complex(z) / 2.0) * gamma(complex(z) / 2.0))
