import logging

import numpy as np
from scipy.special import bernoulli, factorial

from ..core.exceptions import DomainError, PoleError
from .models import ArrayLike, as_complex_array, ensure_finite, restore

logger = logging.getLogger(__name__)

MAX_IMAG = 1.0e4
_EM_TERMS = 30
_CHUNK = 512
_MIN_HEAD = 20

_B = bernoulli(2 * _EM_TERMS)
# B_{2k} / (2k)!
_EM_COEFFS = np.array([_B[2 * k] / factorial(2 * k, exact=False) for k in range(1, _EM_TERMS + 1)])


def head_length(s: complex) -> int:
    """Number of terms summed directly before the Euler-Maclaurin correction."""
    return max(_MIN_HEAD, int(np.ceil(abs(s) / np.pi)) + _MIN_HEAD)


def _euler_maclaurin(s: np.ndarray, n_head: int) -> np.ndarray:
    n = np.arange(1, n_head, dtype=float)
    log_n = np.log(n)
    head = np.exp(-np.outer(s, log_n)).sum(axis=1)
    big_n = float(n_head)
    n_pow = np.exp(-s * np.log(big_n))
    total = head + big_n * n_pow / (s - 1.0) + 0.5 * n_pow
    # f_1 = s N^{-s-1}, f_{k+1} = f_k (s + 2k - 1)(s + 2k) / N^2
    f = s * n_pow / big_n
    for k in range(1, _EM_TERMS + 1):
        total = total + _EM_COEFFS[k - 1] * f
        f = f * (s + 2 * k - 1) * (s + 2 * k) / (big_n * big_n)
    return total


def zeta(s: ArrayLike):
    """
    Riemann zeta function by Euler-Maclaurin summation.

    The number of directly summed terms grows like |s|/pi so that the 30-term
    Bernoulli correction converges geometrically. Arguments are processed in
    chunks sorted by |s| so each chunk shares one head length.

    Args:
        s (ArrayLike): Scalar or array, |Im s| <= 10^4.

    Returns:
        complex or numpy.ndarray: zeta(s).

    Raises:
        PoleError: At s = 1.
        DomainError: If |Im s| exceeds 10^4.
    """
    arr, scalar = as_complex_array(s)
    shape = np.shape(s)
    if np.any(arr == 1.0):
        raise PoleError("zeta(1)", "the Riemann zeta function has a simple pole at s = 1.")
    if np.any(np.abs(arr.imag) > MAX_IMAG):
        raise DomainError(f"zeta is validated for |Im s| <= {MAX_IMAG:g}.")
    flat = arr.ravel()
    order = np.argsort(np.abs(flat), kind="stable")
    out = np.empty_like(flat)
    for start in range(0, flat.size, _CHUNK):
        idx = order[start:start + _CHUNK]
        n_head = head_length(flat[idx[-1]])
        out[idx] = _euler_maclaurin(flat[idx], n_head)
    return restore(ensure_finite(out, "zeta"), scalar, shape)


def zeta_critical_line(t: ArrayLike):
    """zeta(1/2 + i t) for real t."""
    t_arr = np.asarray(t, dtype=float)
    return zeta(0.5 + 1j * t_arr)
