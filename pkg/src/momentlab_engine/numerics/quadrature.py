import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import DomainError, QuadratureError
from .models import DecayHint, QuadratureResult, QuadratureSpec, resolve_spec

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# Window in the transformed variable for each decay class.
_EXP_WINDOW = (-6.0, 7.0)
_ALG_WINDOW = (-6.0, 6.0)
_VERTICAL_START = 8.0
_VERTICAL_MAX = 4096.0


def _halfline_map(tau: np.ndarray, decay: DecayHint, scale: float) -> Tuple[np.ndarray, np.ndarray]:
    if decay == DecayHint.ALGEBRAIC:
        # x = exp(pi/2 sinh tau)
        x = scale * np.exp(0.5 * np.pi * np.sinh(tau))
        dx = x * 0.5 * np.pi * np.cosh(tau)
    else:
        # x = exp(tau - exp(-tau)): double-exponential at 0, single-exponential at infinity
        x = scale * np.exp(tau - np.exp(-tau))
        dx = x * (1.0 + np.exp(-tau))
    return x, dx


def _sample(f: Integrand, x: np.ndarray, dx: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        vals = np.asarray(f(x), dtype=complex) * dx
    bad = ~np.isfinite(vals)
    if bad.any():
        # only the far ends of the window may overflow; their true contribution is nil
        logger.debug("Dropping %d non-finite samples at the window edges.", int(bad.sum()))
        vals = np.where(bad, 0.0, vals)
    return vals


def integrate_halfline(
    f: Integrand,
    spec: Optional[QuadratureSpec] = None,
    decay: DecayHint = DecayHint.EXPONENTIAL,
    scale: float = 1.0,
) -> QuadratureResult:
    """
    Integral of ``f`` over (0, inf) by a double-exponential substitution and
    the trapezoidal rule with step halving.

    Args:
        f (Integrand): Vectorised integrand, called with numpy arrays.
        spec (Optional[QuadratureSpec]): Tolerances.
        decay (DecayHint): Tail behaviour of ``f``; ALGEBRAIC uses exp(pi/2 sinh t).
        scale (float): Characteristic length of the integrand.

    Returns:
        QuadratureResult: Estimate, |I_h - I_{2h}| as the error estimate, evaluation count.

    Raises:
        QuadratureError: If the tolerance is not reached within ``max_subdivisions`` halvings.
    """
    spec = resolve_spec(spec)
    lo, hi = _ALG_WINDOW if decay == DecayHint.ALGEBRAIC else _EXP_WINDOW
    h = 0.5
    tau = np.arange(lo, hi + 0.5 * h, h)
    x, dx = _halfline_map(tau, decay, scale)
    total = _sample(f, x, dx).sum()
    evaluations = tau.size
    estimate = h * total
    error = np.inf
    for level in range(1, spec.max_subdivisions + 1):
        h /= 2.0
        tau_new = np.arange(lo + h, hi, 2.0 * h)
        x, dx = _halfline_map(tau_new, decay, scale)
        total += _sample(f, x, dx).sum()
        evaluations += tau_new.size
        refined = h * total
        error = abs(refined - estimate)
        estimate = refined
        if level >= 2 and error <= spec.tolerance(abs(estimate)):
            return QuadratureResult(value=complex(estimate), error_estimate=float(error), evaluations=evaluations)
    raise QuadratureError(
        f"Half-line quadrature ({decay.value}) stopped at error {error:.3e}.",
        partial_estimate=complex(estimate),
        error_estimate=float(error),
    )


def integrate_halfline_rows(
    f: Callable[[np.ndarray], np.ndarray],
    scales: np.ndarray,
    spec: Optional[QuadratureSpec] = None,
    decay: DecayHint = DecayHint.EXPONENTIAL,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    A family of half-line integrals sharing one substitution, one per row.

    ``f`` receives a (rows, nodes) array of abscissae, row i scaled by
    ``scales[i]``, and returns values of the same shape. Step halving stops
    when every row meets its tolerance.

    Returns:
        Tuple[numpy.ndarray, numpy.ndarray]: Per-row estimates and error estimates.

    Raises:
        QuadratureError: If some row has not converged after ``max_subdivisions`` halvings.
    """
    spec = resolve_spec(spec)
    scales = np.asarray(scales, dtype=float).ravel()
    lo, hi = _ALG_WINDOW if decay == DecayHint.ALGEBRAIC else _EXP_WINDOW

    def sample(tau: np.ndarray) -> np.ndarray:
        x, dx = _halfline_map(tau, decay, 1.0)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            vals = np.asarray(f(scales[:, None] * x[None, :]), dtype=complex) * (scales[:, None] * dx[None, :])
        return np.where(np.isfinite(vals), vals, 0.0).sum(axis=1)

    h = 0.5
    total = sample(np.arange(lo, hi + 0.5 * h, h))
    estimate = h * total
    error = np.full(scales.size, np.inf)
    for level in range(1, spec.max_subdivisions + 1):
        h /= 2.0
        total = total + sample(np.arange(lo + h, hi, 2.0 * h))
        refined = h * total
        error = np.abs(refined - estimate)
        estimate = refined
        tol = np.maximum(spec.rel_tol * np.abs(estimate), spec.abs_tol)
        if level >= 2 and np.all(error <= tol):
            return estimate, error
    worst = int(np.argmax(error))
    raise QuadratureError(
        f"Row quadrature stopped at error {error[worst]:.3e} (row {worst} of {scales.size}).",
        partial_estimate=complex(estimate[worst]),
        error_estimate=float(error[worst]),
    )


def integrate_vertical_line(
    f: Integrand,
    re_part: float,
    spec: Optional[QuadratureSpec] = None,
    decay: DecayHint = DecayHint.GAUSSIAN,
) -> QuadratureResult:
    """
    (1/2 pi i) * integral of ``f`` along Re w = re_part, i.e. (1/2 pi) int f(c + i tau) d tau.

    The truncation height doubles from 8 until the integrand at +-T is negligible
    against its peak; the trapezoidal step then halves until two levels agree.

    Raises:
        DomainError: For ALGEBRAIC decay, which the truncation rule cannot certify.
        QuadratureError: If truncation or refinement does not converge.
    """
    spec = resolve_spec(spec)
    if decay == DecayHint.ALGEBRAIC:
        raise DomainError("Vertical-line integrals need at least exponential decay.")

    def g(tau: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            vals = np.asarray(f(re_part + 1j * tau), dtype=complex)
        return np.where(np.isfinite(vals), vals, 0.0)

    coarse = np.linspace(-_VERTICAL_START, _VERTICAL_START, 65)
    peak = float(np.max(np.abs(g(coarse))))
    if peak == 0.0:
        return QuadratureResult(value=0j, error_estimate=0.0, evaluations=coarse.size)

    height = _VERTICAL_START
    edge_tol = 1e-3 * spec.rel_tol * peak
    while True:
        edge = np.linspace(height / 2.0, height, 33)
        tail = max(float(np.max(np.abs(g(edge)))), float(np.max(np.abs(g(-edge)))))
        if tail <= edge_tol:
            break
        height *= 2.0
        if height > _VERTICAL_MAX:
            raise QuadratureError(
                f"Integrand on Re w = {re_part:g} does not decay by |Im w| = {_VERTICAL_MAX:g}.",
                partial_estimate=None,
                error_estimate=tail,
            )

    h = 0.5
    tau = np.arange(-height, height + 0.5 * h, h)
    total = g(tau).sum()
    evaluations = tau.size + coarse.size
    estimate = h * total
    error = np.inf
    for level in range(1, spec.max_subdivisions + 1):
        h /= 2.0
        tau_new = np.arange(-height + h, height, 2.0 * h)
        total += g(tau_new).sum()
        evaluations += tau_new.size
        refined = h * total
        error = abs(refined - estimate)
        estimate = refined
        if level >= 2 and error / (2.0 * np.pi) <= spec.tolerance(abs(estimate) / (2.0 * np.pi)):
            return QuadratureResult(
                value=complex(estimate / (2.0 * np.pi)),
                error_estimate=float(error / (2.0 * np.pi)),
                evaluations=evaluations,
            )
    raise QuadratureError(
        f"Vertical-line quadrature at Re w = {re_part:g} stopped at error {error:.3e}.",
        partial_estimate=complex(estimate / (2.0 * np.pi)),
        error_estimate=float(error / (2.0 * np.pi)),
    )


def gauss_legendre_panels(edges: Sequence[float], order: int = 16) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss-Legendre nodes and weights on consecutive panels.

    Args:
        edges (Sequence[float]): Increasing panel boundaries.
        order (int): Nodes per panel.

    Returns:
        Tuple[numpy.ndarray, numpy.ndarray]: Flattened nodes and weights.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise DomainError("Panel edges must be a strictly increasing sequence of length >= 2.")
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * ref_nodes[None, :]).ravel()
    weights = (half[:, None] * ref_weights[None, :]).ravel()
    return nodes, weights
