import logging
import math
import warnings
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import beta, betainc

from ..core.config_loader import load_app_config
from ..core.exceptions import DomainError, TruncationWarning
from ..core.parallel import ordered_map
from ..numerics import bessel_k, gamma, zeta
from .models import PartialSumRow, SeriesTruncation, SeriesValue, UpperHalfPoint

logger = logging.getLogger(__name__)

Point = Union[UpperHalfPoint, complex]

# Relative tail size above which a partial sum is reported as under-truncated.
TRUNCATION_WARN_LEVEL = 1e-3
_POISSON_TERMS = 10
_CHUNK = 4096


def as_upper_half_point(z: Point) -> UpperHalfPoint:
    if isinstance(z, UpperHalfPoint):
        return z
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"{z} is not in the upper half-plane.")
    return UpperHalfPoint(x=z.real, y=z.imag)


def _workers(workers: Optional[int]) -> int:
    return workers if workers is not None else load_app_config().execution.workers


@lru_cache(maxsize=8)
def _cosets(bound: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Coprime pairs (c, d) with 1 <= c <= bound, |d| <= bound, together with a = d^{-1} mod c.

    With the identity coset (0, 1) these represent P(Q)\\GL2(Q) restricted to the square
    max(|c|, |d|) <= bound, one representative per sign class.
    """
    cs, ds, inverses = [], [], []
    d_range = np.arange(-bound, bound + 1)
    for c in range(1, bound + 1):
        d = d_range[np.gcd(c, d_range) == 1]
        if c == 1:
            a = np.zeros(d.size, dtype=np.int64)
        else:
            table = np.zeros(c, dtype=np.int64)
            for r in range(1, c):
                if math.gcd(r, c) == 1:
                    table[r] = pow(r, -1, c)
            a = table[d % c]
        cs.append(np.full(d.size, c, dtype=np.int64))
        ds.append(d)
        inverses.append(a)
    out = (np.concatenate(cs), np.concatenate(ds), np.concatenate(inverses))
    for arr in out:
        arr.flags.writeable = False
    return out


def _coset_images(point: UpperHalfPoint, bound: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Iwasawa coordinates (x mod 1, y) of gamma z for every coset, and the shell max(|c|, |d|)."""
    c, d, a = _cosets(bound)
    x, y = point.x, point.y
    cx_d = c * x + d
    norm = cx_d * cx_d + (c * y) ** 2
    y_img = y / norm
    x_img = np.mod(a / c - cx_d / (c * norm), 1.0)
    shell = np.maximum(c, np.abs(d))
    return (
        np.concatenate(([x], x_img)),
        np.concatenate(([y], y_img)),
        np.concatenate(([1], shell)),
    )


def seed_mass(w: float) -> float:
    """int_R (1 + u^2)^{-w/2} du = sqrt(pi) Gamma((w-1)/2) / Gamma(w/2)."""
    return float((math.sqrt(math.pi) * gamma((w - 1) / 2) / gamma(w / 2)).real)


def _poisson_sum(x: np.ndarray, y: np.ndarray, w: float) -> np.ndarray:
    nu = (w - 1) / 2
    coeff = 2.0 * math.pi ** (w / 2) / gamma(w / 2).real
    total = np.full(x.shape, seed_mass(w))
    for k in range(1, _POISSON_TERMS + 1):
        xi = k * y
        total += 2.0 * coeff * xi**nu * np.asarray(bessel_k(nu, 2.0 * math.pi * xi)) * np.cos(2.0 * math.pi * k * x)
    return y * total


def _euler_maclaurin_tail(start: np.ndarray, y: np.ndarray, w: float) -> np.ndarray:
    # sum_{m >= 1} g(start + m) with g(u) = (1 + (u/y)^2)^{-w/2}
    t = start / y
    base = 1.0 + t * t
    integral = 0.5 * y * beta((w - 1) / 2, 0.5) * betainc((w - 1) / 2, 0.5, 1.0 / base)
    g = base ** (-w / 2)
    dg = -w * t / y * base ** (-w / 2 - 1)
    return integral - 0.5 * g - dg / 12.0


def _direct_sum(x: np.ndarray, y: np.ndarray, w: float, bound: int) -> np.ndarray:
    n = np.arange(-bound, bound + 1, dtype=float)
    u = (x[:, None] + n[None, :]) / y[:, None]
    head = ((1.0 + u * u) ** (-w / 2)).sum(axis=1)
    return head + _euler_maclaurin_tail(x + bound, y, w) + _euler_maclaurin_tail(bound - x, y, w)


def translation_sum(x, y, w: float, translation_bound: int = 60) -> np.ndarray:
    """
    sum_{n in Z} (1 + ((x + n)/y)^2)^{-w/2}, elementwise.

    Poisson summation with the Bessel-K transform of the seed for y >= 1, otherwise a
    direct sum over |n| <= translation_bound with an Euler-Maclaurin tail.
    """
    x = np.mod(np.atleast_1d(np.asarray(x, dtype=float)), 1.0)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty(x.shape)
    wide = y >= 1.0
    if wide.any():
        out[wide] = _poisson_sum(x[wide], y[wide], w)
    narrow = np.nonzero(~wide)[0]
    for start in range(0, narrow.size, _CHUNK):
        idx = narrow[start:start + _CHUNK]
        out[idx] = _direct_sum(x[idx], y[idx], w, translation_bound)
    return out


def _real_w(w) -> float:
    w = complex(w)
    if w.imag != 0.0:
        raise DomainError("The Poincare seed exponent w must be real.")
    if w.real <= 1.0:
        raise DomainError(f"The seed needs w > 1, got {w.real:g}.")
    return w.real


def _min_eigenvalue(point: UpperHalfPoint) -> float:
    # |c z + d|^2 is the quadratic form [[|z|^2, x], [x, 1]] evaluated at (c, d)
    form = np.array([[point.x**2 + point.y**2, point.x], [point.x, 1.0]])
    return float(np.linalg.eigvalsh(form)[0])


def eisenstein_tail(point: UpperHalfPoint, sigma: float, bound: int) -> float:
    """Estimate of sum (y / |cz + d|^2)^sigma over the cosets outside the square of side ``bound``."""
    if sigma <= 1.0:
        return math.inf
    lam = _min_eigenvalue(point)
    return (point.y / lam) ** sigma * math.pi * bound ** (2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0)


def _poincare_tail(point: UpperHalfPoint, sigma: float, w: float, bound: int) -> float:
    lam = _min_eigenvalue(point)
    spread = 1.0 + seed_mass(w) * point.y / (2.0 * lam * bound * bound)
    return spread * eisenstein_tail(point, sigma, bound)


def _warn_truncation(what: str, tail: float, value: complex) -> None:
    if tail > TRUNCATION_WARN_LEVEL * abs(value):
        message = f"{what}: tail estimate {tail:.3e} exceeds {TRUNCATION_WARN_LEVEL:g} of |value| = {abs(value):.3e}."
        logger.warning(message)
        warnings.warn(message, TruncationWarning, stacklevel=3)


def _poincare_terms(
    point: UpperHalfPoint, v: complex, w: float, trunc: SeriesTruncation, workers: int
) -> Tuple[np.ndarray, np.ndarray]:
    x_img, y_img, shell = _coset_images(point, trunc.coprime_bound)
    blocks = [slice(i, i + _CHUNK) for i in range(0, x_img.size, _CHUNK)]
    sums = ordered_map(
        lambda block: translation_sum(x_img[block], y_img[block], w, trunc.translation_bound), blocks, workers
    )
    return y_img ** complex(v) * np.concatenate(sums), shell


def eval_poincare_Q(
    z: Point,
    v: complex,
    w: float,
    trunc: Optional[SeriesTruncation] = None,
    enforce_region: bool = True,
    workers: Optional[int] = None,
) -> SeriesValue:
    """
    Partial sum of the Poincare series over Q with seed y^v (1 + (x/y)^2)^{-w/2}.

    Sums, over coset pairs (c, d) in the truncation square, Im(gamma z)^v times the full
    translation sum of the seed at gamma z. The point is reduced modulo 1 first.

    Args:
        z (UpperHalfPoint or complex): Point of the upper half-plane.
        v (complex): Twist exponent, Re v > 1.
        w (float): Real seed exponent, w > 1.
        trunc (Optional[SeriesTruncation]): Truncation; defaults to N = 100.
        enforce_region (bool): Reject Re v <= 1 (set False for divergence probes).
        workers (Optional[int]): Threads for the translation sums; configuration default when omitted.

    Returns:
        SeriesValue: Partial sum, tail estimate (infinite outside Re v > 1) and coset count.

    Raises:
        DomainError: Outside the convergence region.
    """
    trunc = trunc or SeriesTruncation()
    w = _real_w(w)
    v = complex(v)
    if enforce_region and v.real <= 1.0:
        raise DomainError(f"The Poincare series converges only for Re v > 1, got {v.real:g}.")
    point = as_upper_half_point(z)
    point = UpperHalfPoint(x=point.x % 1.0, y=point.y)
    terms, _ = _poincare_terms(point, v, w, trunc, _workers(workers))
    value = complex(terms.sum())
    tail = _poincare_tail(point, v.real, w, trunc.coprime_bound)
    _warn_truncation("eval_poincare_Q", tail, value)
    return SeriesValue(value=value, tail_estimate=tail, terms=terms.size)


def eval_eisenstein_Q(z: Point, s: complex, trunc: Optional[SeriesTruncation] = None) -> SeriesValue:
    """
    Partial sum of E(z, s) = sum over coprime (c, d) modulo sign of (y / |cz + d|^2)^s.

    Raises:
        DomainError: Unless Re s > 1.
    """
    trunc = trunc or SeriesTruncation()
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError(f"The Eisenstein series converges only for Re s > 1, got {s.real:g}.")
    point = as_upper_half_point(z)
    point = UpperHalfPoint(x=point.x % 1.0, y=point.y)
    _, y_img, _ = _coset_images(point, trunc.coprime_bound)
    value = complex((y_img**s).sum())
    tail = eisenstein_tail(point, s.real, trunc.coprime_bound)
    _warn_truncation("eval_eisenstein_Q", tail, value)
    return SeriesValue(value=value, tail_estimate=tail, terms=y_img.size)


def eisenstein_fourier_Q(z: Point, s: complex, terms: int = 60) -> complex:
    """
    Fourier expansion of the same Eisenstein series:
    y^s + phi(s) y^{1-s} + 2 pi^s sqrt(y) / (Gamma(s) zeta(2s))
    * sum_{n != 0} |n|^{s-1/2} sigma_{1-2s}(|n|) K_{s-1/2}(2 pi |n| y) e^{2 pi i n x},
    with phi(s) = sqrt(pi) Gamma(s - 1/2) zeta(2s - 1) / (Gamma(s) zeta(2s)).
    """
    point = as_upper_half_point(z)
    s = complex(s)
    x, y = point.x, point.y
    n = np.arange(1, terms + 1)
    divisor_sums = np.zeros(terms, dtype=complex)
    for d in range(1, terms + 1):
        divisor_sums[d - 1::d] += complex(d) ** (1 - 2 * s)
    zeta_2s = zeta(2 * s)
    phi = math.sqrt(math.pi) * gamma(s - 0.5) * zeta(2 * s - 1) / (gamma(s) * zeta_2s)
    k_vals = np.asarray(bessel_k(s - 0.5, 2.0 * math.pi * n * y))
    series = (n ** (s - 0.5) * divisor_sums * k_vals * 2.0 * np.cos(2.0 * math.pi * n * x)).sum()
    return complex(
        y**s + phi * y ** (1 - s) + 2.0 * math.pi**s * math.sqrt(y) / (gamma(s) * zeta_2s) * series
    )


def leading_term_ratio(y: float, v: float, w: float, trunc: Optional[SeriesTruncation] = None) -> float:
    """eval_poincare_Q(iy) / (seed_mass(w) y^{v+1}); tends to 1 as y grows (v, w real)."""
    value = eval_poincare_Q(complex(0.0, y), v, w, trunc).value
    return float(value.real / (seed_mass(_real_w(w)) * y ** (float(v) + 1.0)))


def partial_sum_table(
    z: Point,
    v: complex,
    w: float,
    ladder: Sequence[int],
    translation_bound: int = 60,
    enforce_region: bool = True,
    workers: Optional[int] = None,
) -> List[PartialSumRow]:
    """
    Partial sums of the Poincare series for every truncation in ``ladder``, from a single
    evaluation at the largest one (cosets are grouped by shell max(|c|, |d|)).

    Raises:
        DomainError: For an empty or non-increasing ladder, or outside the convergence region.
    """
    ladder = [int(n) for n in ladder]
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])) or ladder[0] < 1:
        raise DomainError("The truncation ladder must be a strictly increasing list of positive integers.")
    w = _real_w(w)
    v = complex(v)
    if enforce_region and v.real <= 1.0:
        raise DomainError(f"The Poincare series converges only for Re v > 1, got {v.real:g}.")
    point = as_upper_half_point(z)
    point = UpperHalfPoint(x=point.x % 1.0, y=point.y)
    trunc = SeriesTruncation(coprime_bound=ladder[-1], translation_bound=translation_bound)
    terms, shell = _poincare_terms(point, v, w, trunc, _workers(workers))
    per_shell = np.bincount(shell, weights=terms.real, minlength=ladder[-1] + 1) + 1j * np.bincount(
        shell, weights=terms.imag, minlength=ladder[-1] + 1
    )
    cumulative = np.cumsum(per_shell)
    rows, previous = [], None
    for bound in ladder:
        value = complex(cumulative[bound])
        increment = 0.0 if previous is None else abs(value - previous)
        tail = _poincare_tail(point, v.real, w, bound) if v.real > 1.0 else math.inf
        rows.append(PartialSumRow(coprime_bound=bound, value=value, increment=increment, tail_estimate=tail))
        previous = value
    return rows
