import logging
import math
import warnings
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import DomainError, QuadratureError, SlowDecayWarning
from ..fields.models import PlaceType
from ..numerics import QuadratureSpec, bessel_j, bessel_k, gauss_legendre_panels, resolve_spec
from .gamma_kernels import k_asym_main
from .models import KernelIntegral, LocalCharacterParams, SpectralParams

logger = logging.getLogger(__name__)

# Inner integrals run over u = log a on [log 1e-14, log a_max] with 16-point
# Gauss-Legendre panels spanning at most this much phase.
_PANEL_PHASE = 6.0
_A_MIN = 1e-14
_COMPLEX_A_MAX = 3.2  # K_{2 i mu}(4 pi a) ~ e^{-40}
_REAL_A_MAX = 6.4  # K_{i mu}(2 pi a) ~ e^{-40}

# Outer integrals: trapezoid in log rho from -10 to log(10 (|t + t_nu| + |ell| + 2)).
_OUTER_LOG_MIN = -10.0
_OUTER_STEP = 0.2
# The inner rules bound the accuracy the outer refinement test can certify.
_OUTER_REL_FLOOR = 1e-8


def _log_panel_edges(u_lo: float, u_hi: float, rate: Callable[[float], float]) -> np.ndarray:
    # rate is nondecreasing in u, so sizing a panel by its right end is safe
    edges = [u_lo]
    u = u_lo
    while u < u_hi:
        du = _PANEL_PHASE / rate(u)
        du = _PANEL_PHASE / rate(min(u + du, u_hi))
        u = min(u + du, u_hi)
        edges.append(u)
    return np.array(edges)


class _InnerRule:
    """
    Quadrature nodes for integrals int_0^inf a^{i c} K(a) * oscillator(lambda a) da on a
    log-a grid resolved for every lambda up to ``lam_max``; the non-oscillating part is
    evaluated once and reused for each lambda.
    """

    def __init__(self, power: float, bessel_order: complex, bessel_scale: float, lam_max: float, a_max: float):
        base_rate = abs(power) + abs(bessel_order) + 1.0
        edges = _log_panel_edges(
            math.log(_A_MIN), math.log(a_max), lambda u: base_rate + lam_max * math.exp(u)
        )
        u, wts = gauss_legendre_panels(edges, order=16)
        self.a = np.exp(u)
        k_vals = bessel_k(bessel_order, bessel_scale * self.a)
        self.weights = wts * self.a * np.exp(1j * power * u) * k_vals
        self.size = self.a.size


def complex_place_profile(rho, t_shift: float, ell: int, mu: complex, rule: Optional[_InnerRule] = None) -> np.ndarray:
    """
    H(rho) = int_0^inf a^{2 i T} K_{2 i mu}(4 pi a) J_{|ell|}(4 pi rho a) da with T = t + t_nu.

    Args:
        rho (array-like): Nonnegative radii.
        t_shift (float): T = t + t_nu.
        ell (int): Discrete character parameter at the place.
        mu (complex): Spectral parameter (real or purely imaginary).

    Returns:
        numpy.ndarray: Complex values of H, one per radius.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho < 0):
        raise DomainError("complex_place_profile needs rho >= 0.")
    if rule is None:
        rule = _InnerRule(2.0 * t_shift, 2j * mu, 4.0 * math.pi, 4.0 * math.pi * float(rho.max()), _COMPLEX_A_MAX)
    order = abs(int(ell))
    return np.array([np.dot(rule.weights, bessel_j(order, 4.0 * math.pi * r * rule.a)) for r in rho])


def real_place_profile(x, t_shift: float, mu: complex, rule: Optional[_InnerRule] = None) -> np.ndarray:
    """F(x) = 2 int_0^inf a^{i T} K_{i mu}(2 pi a) cos(2 pi a x) da with T = t + t_nu."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if rule is None:
        rule = _InnerRule(t_shift, 1j * mu, 2.0 * math.pi, 2.0 * math.pi * float(np.abs(x).max()), _REAL_A_MAX)
    return np.array([2.0 * np.dot(rule.weights, np.cos(2.0 * math.pi * xi * rule.a)) for xi in x])


def _outer_log_trapezoid(
    integrand: Callable[[np.ndarray], np.ndarray],
    log_max: float,
    spec: QuadratureSpec,
    what: str,
) -> Tuple[complex, float, np.ndarray, np.ndarray]:
    """Trapezoid in u = log r at steps 0.2, 0.1 and, if needed, 0.05; returns value, error, nodes, samples."""
    n = max(2, int(math.ceil((log_max - _OUTER_LOG_MIN) / _OUTER_STEP)))
    h = _OUTER_STEP / 2.0
    u = _OUTER_LOG_MIN + h * np.arange(2 * n + 1)
    vals = integrand(u)
    coarse = 2.0 * h * (vals[::2].sum() - 0.5 * (vals[0] + vals[-1]))
    fine = h * (vals.sum() - 0.5 * (vals[0] + vals[-1]))
    error = abs(fine - coarse)
    rel = max(spec.rel_tol, _OUTER_REL_FLOOR)
    if error <= max(rel * abs(fine), spec.abs_tol):
        return complex(fine), float(error), u, vals
    logger.debug("%s: refining outer step to %.3f (difference %.3e)", what, h / 2.0, error)
    mid = u[:-1] + h / 2.0
    mid_vals = integrand(mid)
    finer = 0.5 * fine + 0.5 * h * mid_vals.sum()
    error = abs(finer - fine)
    if error > max(rel * abs(finer), spec.abs_tol):
        raise QuadratureError(
            f"{what}: outer refinement stalled at difference {error:.3e}.",
            partial_estimate=complex(finer),
            error_estimate=float(error),
        )
    nodes = np.empty(u.size + mid.size)
    samples = np.empty(u.size + mid.size, dtype=complex)
    nodes[0::2], nodes[1::2] = u, mid
    samples[0::2], samples[1::2] = vals, mid_vals
    return complex(finer), float(error), nodes, samples


def _diagonal_mu(mu: Union[complex, SpectralParams]) -> complex:
    if isinstance(mu, SpectralParams):
        if mu.mu1 != mu.mu2:
            raise DomainError("The positive kernel representation needs mu1 = mu2.")
        return mu.mu1
    return complex(mu)


def _warn_slow_decay(w: complex, what: str) -> None:
    if w.real < 1.0:
        message = f"{what}: Re w = {w.real:g} < 1, the radial tail decays slowly."
        logger.warning(message)
        warnings.warn(message, SlowDecayWarning, stacklevel=3)


def k_exact_complex(
    t: float,
    w: complex,
    chi: LocalCharacterParams,
    mu: Union[complex, SpectralParams],
    spec: Optional[QuadratureSpec] = None,
) -> KernelIntegral:
    """
    Positive integral representation of the complex-place kernel (v = 0, Re s = 1/2, mu1 = mu2 = mu):
    (2 pi)^3 int_0^{pi/2} (cos phi)^{2w-1} sin phi |V(t, phi)|^2 d phi, evaluated after the
    substitution rho = tan phi as (2 pi)^3 int_0^inf (1 + rho^2)^{-w} |H(rho)|^2 rho d rho.

    The radial integral is a trapezoid rule in log rho (step 0.1 checked against 0.2,
    refined to 0.05 when they disagree); the head below e^{-10} and the tail beyond
    10 (|T| + |ell| + 2) are added from the local behaviour of H.

    Args:
        t (float): Spectral height.
        w (complex): Weight exponent, Re w > 0.
        chi (LocalCharacterParams): (t_nu, ell_nu) of the character at the place.
        mu (complex or SpectralParams): Spectral parameter, real or purely imaginary (mu1 = mu2).
        spec (Optional[QuadratureSpec]): Tolerances.

    Returns:
        KernelIntegral: Value (real and nonnegative for real w), refinement error and tail size.

    Raises:
        DomainError: If Re w <= 0.
        QuadratureError: If the outer refinement does not settle.
    """
    spec = resolve_spec(spec)
    w = complex(w)
    mu = _diagonal_mu(mu)
    if w.real <= 0.0:
        raise DomainError("k_exact_complex needs Re w > 0.")
    _warn_slow_decay(w, "k_exact_complex")
    T = float(t) + chi.t_nu
    log_max = math.log(10.0 * (abs(T) + abs(chi.ell_nu) + 2.0))
    rho_max = math.exp(_OUTER_LOG_MIN + _OUTER_STEP * math.ceil((log_max - _OUTER_LOG_MIN) / _OUTER_STEP))
    rule = _InnerRule(2.0 * T, 2j * mu, 4.0 * math.pi, 4.0 * math.pi * rho_max, _COMPLEX_A_MAX)

    def integrand(u: np.ndarray) -> np.ndarray:
        rho = np.exp(u)
        h = complex_place_profile(rho, T, chi.ell_nu, mu, rule)
        return (1.0 + rho * rho) ** (-w) * np.abs(h) ** 2 * rho * rho

    value, error, nodes, samples = _outer_log_trapezoid(integrand, log_max, spec, "k_exact_complex")
    rho_lo, rho_hi = math.exp(nodes[0]), math.exp(nodes[-1])
    # |H|^2 is flat at 0 and ~ rho^{-2} at infinity
    head = samples[0] / 2.0
    tail = samples[-1] * rho_hi ** (-2.0 * w) * (1.0 + rho_hi**2) ** w / (2.0 * w)
    total = (2.0 * math.pi) ** 3 * (value + head + tail)
    logger.debug(
        "k_exact_complex(t=%g, w=%s, ell=%d): %.6e (rho in [%.1e, %.1f], %d inner nodes)",
        t, w, chi.ell_nu, total.real, rho_lo, rho_hi, rule.size,
    )
    return KernelIntegral(
        value=total,
        error_estimate=(2.0 * math.pi) ** 3 * error,
        tail_estimate=(2.0 * math.pi) ** 3 * (abs(head) + abs(tail)),
        evaluations=int(nodes.size * rule.size),
    )


def k_exact_real(
    t: float,
    w: complex,
    chi: LocalCharacterParams,
    mu: Union[complex, SpectralParams],
    spec: Optional[QuadratureSpec] = None,
) -> KernelIntegral:
    """
    Real-place analogue: 2 int_0^inf (1 + x^2)^{-w/2} |F(t, x)|^2 dx with
    F(t, x) = 2 int_0^inf a^{i(t + t_nu)} K_{i mu}(2 pi a) cos(2 pi a x) da.

    Raises:
        DomainError: If Re w <= 0.
        QuadratureError: If the outer refinement does not settle.
    """
    spec = resolve_spec(spec)
    w = complex(w)
    mu = _diagonal_mu(mu)
    if w.real <= 0.0:
        raise DomainError("k_exact_real needs Re w > 0.")
    _warn_slow_decay(w, "k_exact_real")
    T = float(t) + chi.t_nu
    log_max = math.log(10.0 * (abs(T) + 2.0))
    x_max = math.exp(_OUTER_LOG_MIN + _OUTER_STEP * math.ceil((log_max - _OUTER_LOG_MIN) / _OUTER_STEP))
    rule = _InnerRule(T, 1j * mu, 2.0 * math.pi, 2.0 * math.pi * x_max, _REAL_A_MAX)

    def integrand(u: np.ndarray) -> np.ndarray:
        x = np.exp(u)
        f = real_place_profile(x, T, mu, rule)
        return (1.0 + x * x) ** (-w / 2.0) * np.abs(f) ** 2 * x

    value, error, nodes, samples = _outer_log_trapezoid(integrand, log_max, spec, "k_exact_real")
    x_hi = math.exp(nodes[-1])
    head = samples[0]
    tail = samples[-1] * x_hi ** (-w) * (1.0 + x_hi**2) ** (w / 2.0) / (w + 1.0)
    total = 2.0 * (value + head + tail)
    return KernelIntegral(
        value=total,
        error_estimate=2.0 * error,
        tail_estimate=2.0 * (abs(head) + abs(tail)),
        evaluations=int(nodes.size * rule.size),
    )


def estimate_real_place_constant(
    w: float,
    mu: complex,
    t_grid: Sequence[float],
    spec: Optional[QuadratureSpec] = None,
) -> List[float]:
    """Ratios k_exact_real / normalised real main term along ``t_grid`` (trivial character)."""
    chi = LocalCharacterParams()
    ratios = []
    for t in t_grid:
        exact = k_exact_real(t, w, chi, mu, spec).value
        main = k_asym_main(PlaceType.REAL, t, 0.0, w, chi, SpectralParams.diagonal(mu)).value
        ratios.append(float((exact / main).real))
    return ratios
