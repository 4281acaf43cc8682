import logging
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..core.exceptions import DomainError, QuadratureError
from .models import ArrayLike, QuadratureSpec, resolve_spec, restore

logger = logging.getLogger(__name__)

MAX_IMAG_ORDER = 100.0
_K_CHUNK = 256
_J_CHUNK = 128
_LOG_CUTOFF = 40.0
_EPS = np.finfo(float).eps

_J_SERIES_LIMIT = 12.0
_J_SERIES_TERMS = 60
_J_HANKEL_MIN = 30.0


def _canonical_order(order: complex) -> complex:
    # K is even in the order; fold onto one half-plane so K_{-nu} == K_nu bit for bit.
    nu = complex(order)
    if nu.real < 0.0 or (nu.real == 0.0 and nu.imag < 0.0):
        nu = -nu
    return nu + 0.0  # normalises -0.0


def _k_truncation(nu: complex, x: np.ndarray) -> np.ndarray:
    # Smallest t with x (cosh t - 1) - |Re nu| t >= 40, by fixed-point iteration.
    a = abs(nu.real)
    t = np.arccosh(1.0 + _LOG_CUTOFF / x)
    for _ in range(40):
        t = np.arccosh(1.0 + (_LOG_CUTOFF + a * t) / x)
    return t


def _k_scaled_trapezoid(nu: complex, x: np.ndarray, tmax: np.ndarray, h: float):
    n = int(np.ceil(tmax.max() / h))
    t = h * np.arange(n + 1)
    inside = t[None, :] <= tmax[:, None]
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        vals = np.exp(-x[:, None] * (np.cosh(t)[None, :] - 1.0)) * np.cosh(nu * t)[None, :]
    vals = np.where(inside, vals, 0.0)
    vals[:, 0] *= 0.5
    integral = h * vals.sum(axis=1)
    l1 = h * np.abs(vals).sum(axis=1)
    return integral, l1, vals.size


def _k_chunk(nu: complex, x: np.ndarray, spec: QuadratureSpec) -> np.ndarray:
    tmax = _k_truncation(nu, x)
    h = 0.5
    prev, _, _ = _k_scaled_trapezoid(nu, x, tmax, h)
    result = prev.astype(complex)
    active = np.ones(x.size, dtype=bool)
    err = np.full(x.size, np.inf)
    for _ in range(spec.max_subdivisions):
        h /= 2.0
        idx = np.nonzero(active)[0]
        cur, l1, _ = _k_scaled_trapezoid(nu, x[idx], tmax[idx], h)
        err_idx = np.abs(cur - prev[idx])
        # relative test on the scaled integral; the L1 floor bounds cancellation for imaginary orders
        tol = np.maximum(spec.rel_tol * np.abs(cur), 32.0 * _EPS * l1)
        result[idx] = cur
        err[idx] = err_idx
        prev[idx] = cur
        done = err_idx <= tol
        active[idx[done]] = False
        if not active.any():
            return result * np.exp(-x)
    worst = int(np.argmax(np.where(active, err, -1.0)))
    raise QuadratureError(
        f"bessel_k(order={nu}) did not converge at x={x[worst]:g}.",
        partial_estimate=complex(result[worst] * np.exp(-x[worst])),
        error_estimate=float(err[worst] * np.exp(-x[worst])),
    )


def bessel_k(order: complex, x: ArrayLike, spec: Optional[QuadratureSpec] = None):
    """
    Modified Bessel function K_order(x) for x > 0 and complex order.

    Evaluates e^{-x} * int_0^inf exp(-x (cosh t - 1)) cosh(order t) dt with the
    trapezoidal rule, halving the step until two levels agree. Real or purely
    imaginary orders give real output.

    Args:
        order (complex): Order nu, |Im nu| <= 100.
        x (ArrayLike): Positive argument(s).
        spec (Optional[QuadratureSpec]): Tolerances; configuration defaults when omitted.

    Returns:
        float, complex or numpy.ndarray: K_nu(x), same shape as x.

    Raises:
        DomainError: If x <= 0 or |Im nu| > 100.
        QuadratureError: If the step-halving does not converge.
    """
    spec = resolve_spec(spec)
    nu = _canonical_order(order)
    if abs(nu.imag) > MAX_IMAG_ORDER:
        raise DomainError(f"bessel_k supports |Im order| <= {MAX_IMAG_ORDER:g}, got {nu.imag:g}.")
    scalar = np.ndim(x) == 0
    shape = np.shape(x)
    xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(~(xs > 0.0)):
        raise DomainError("bessel_k requires x > 0.")
    out = np.empty(xs.size, dtype=complex)
    for start in range(0, xs.size, _K_CHUNK):
        out[start:start + _K_CHUNK] = _k_chunk(nu, xs[start:start + _K_CHUNK], spec)
    if nu.imag == 0.0 or nu.real == 0.0:
        out = out.real
    return restore(out, scalar, shape)


def _j_series(n: int, x: np.ndarray) -> np.ndarray:
    half = 0.5 * x
    with np.errstate(divide="ignore", invalid="ignore"):
        log_term0 = n * np.log(half) - gammaln(n + 1.0)
    term = np.where(half > 0.0, np.exp(log_term0), 1.0 if n == 0 else 0.0)
    total = term.copy()
    q = -half * half
    for k in range(1, _J_SERIES_TERMS):
        term = term * q / (k * (k + n))
        total = total + term
    return total


def _j_hankel(n: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * n * n
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    live = np.ones(x.size, dtype=bool)
    for k in range(1, 80):
        nxt = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        # asymptotic series: stop each entry at its smallest term
        live &= np.abs(nxt) < np.abs(term)
        live &= np.abs(term) > 1e-17
        if not live.any():
            break
        term = np.where(live, nxt, term)
        sign = (-1.0) ** (k // 2)
        if k % 2 == 0:
            p = p + np.where(live, sign * term, 0.0)
        else:
            q = q + np.where(live, sign * term, 0.0)
    chi = x - (0.5 * n + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def _j_trapezoid(n: int, x: np.ndarray) -> np.ndarray:
    # Periodic integrand: trapezoid over a full period converges geometrically.
    out = np.empty_like(x)
    for start in range(0, x.size, _J_CHUNK):
        xc = x[start:start + _J_CHUNK]
        xm = float(xc.max())
        nodes = int(np.ceil(xm + n + 12.0 * xm ** (1.0 / 3.0) + 40.0))
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        phase = n * theta[None, :] - xc[:, None] * np.sin(theta)[None, :]
        out[start:start + _J_CHUNK] = np.cos(phase).mean(axis=1)
    return out


def bessel_j(order: int, x: ArrayLike):
    """
    Bessel function J_n(x) of integer order for x >= 0.

    Power series for x <= 12, Hankel's expansion for x >= max(30, n^2), the
    periodic trapezoidal rule on Bessel's integral in between. Negative orders
    use J_{-n} = (-1)^n J_n.
    """
    n = int(order)
    if abs(n) > 10_000:
        raise DomainError("bessel_j supports |order| <= 10^4.")
    scalar = np.ndim(x) == 0
    shape = np.shape(x)
    xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(xs < 0.0):
        raise DomainError("bessel_j requires x >= 0.")
    m = abs(n)
    out = np.empty_like(xs)
    small = xs <= _J_SERIES_LIMIT
    large = ~small & (xs >= max(_J_HANKEL_MIN, float(m * m)))
    middle = ~small & ~large
    if small.any():
        out[small] = _j_series(m, xs[small])
    if large.any():
        out[large] = _j_hankel(m, xs[large])
    if middle.any():
        out[middle] = _j_trapezoid(m, xs[middle])
    if n < 0 and m % 2 == 1:
        out = -out
    return restore(out, scalar, shape)
