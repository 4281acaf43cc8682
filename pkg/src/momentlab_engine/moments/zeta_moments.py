import logging
import math
import time
from typing import Iterable, Optional, Sequence

import numpy as np

from ..core.config_loader import load_app_config
from ..core.exceptions import DomainError, QuadratureError
from ..core.parallel import ordered_map
from ..numerics import gauss_legendre_panels, zeta_critical_line
from .models import CriticalLineIntegrals, MomentReport

logger = logging.getLogger(__name__)

MAX_HEIGHT = 5000.0
DEFAULT_FIT_GRID = (500.0, 1000.0, 2000.0, 4000.0)
FOURTH_MOMENT_COEFFICIENT = 1.0 / (2.0 * math.pi**2)
_GL_ORDER = 16
_START_WIDTH = 1.0
_MAX_REFINEMENTS = 6
_NODE_CHUNK = 4096


def _validated_grid(T_grid: Iterable[float]) -> np.ndarray:
    grid = np.asarray(sorted(set(float(T) for T in T_grid)), dtype=float)
    if grid.size == 0:
        raise DomainError("The T-grid is empty.")
    if grid[0] < 0.0 or grid[-1] > MAX_HEIGHT:
        raise DomainError(f"Moment integrals are validated for 0 <= T <= {MAX_HEIGHT:g}.")
    return grid


def _abs_zeta_squared(t: np.ndarray, workers: int) -> np.ndarray:
    chunks = [t[i:i + _NODE_CHUNK] for i in range(0, t.size, _NODE_CHUNK)]
    values = ordered_map(lambda chunk: np.abs(zeta_critical_line(chunk)) ** 2, chunks, workers)
    return np.concatenate(values)


def critical_line_integrals(
    T_grid: Iterable[float],
    powers: Sequence[int] = (2, 4),
    rel_tol: float = 1e-4,
    workers: Optional[int] = None,
) -> CriticalLineIntegrals:
    """
    Cumulative integrals of |zeta(1/2 + it)|^p over [0, T] for every T of the grid and every power.

    A composite 16-point Gauss-Legendre rule on panels of unit width (with every T of the
    grid as a panel edge) is refined by halving the width until two successive rules agree
    to ``rel_tol`` at every grid point. All grid points share the zeta evaluations.

    Args:
        T_grid (Iterable[float]): Heights, 0 <= T <= 5000.
        powers (Sequence[int]): Even powers p.
        rel_tol (float): Agreement required between successive refinements.
        workers (Optional[int]): Threads for the zeta evaluations; configuration default when omitted.

    Returns:
        CriticalLineIntegrals: Values per power, final panel width and the evaluation count.

    Raises:
        DomainError: For an empty grid, heights outside [0, 5000] or odd powers.
        QuadratureError: If the refinement does not settle.
    """
    grid = _validated_grid(T_grid)
    powers = tuple(int(p) for p in powers)
    if not powers or any(p <= 0 or p % 2 for p in powers):
        raise DomainError(f"Powers must be positive and even, got {powers}.")
    workers = workers if workers is not None else load_app_config().execution.workers
    t_max = float(grid[-1])
    if t_max == 0.0:
        return CriticalLineIntegrals(
            T_grid=grid.tolist(), values={p: [0.0] * grid.size for p in powers},
            panel_width=_START_WIDTH, evaluations=0, relative_change=0.0,
        )

    width, previous, evaluations, change = _START_WIDTH, None, 0, math.inf
    for refinement in range(_MAX_REFINEMENTS + 1):
        edges = np.unique(np.concatenate([np.arange(0.0, t_max, width), grid, [0.0, t_max]]))
        nodes, weights = gauss_legendre_panels(edges, _GL_ORDER)
        squared = _abs_zeta_squared(nodes, workers)
        evaluations += nodes.size
        positions = np.searchsorted(edges, grid)
        current = {}
        for p in powers:
            panels = (weights * squared ** (p // 2)).reshape(-1, _GL_ORDER).sum(axis=1)
            cumulative = np.concatenate([[0.0], np.cumsum(panels)])
            current[p] = cumulative[positions]
        if previous is not None:
            change = max(
                float(np.max(np.abs(current[p] - previous[p]) / np.maximum(np.abs(current[p]), 1e-300)))
                for p in powers
            )
            logger.debug("critical_line_integrals: width %.4g, relative change %.3e", width, change)
            if change < rel_tol:
                return CriticalLineIntegrals(
                    T_grid=grid.tolist(),
                    values={p: current[p].tolist() for p in powers},
                    panel_width=width,
                    evaluations=evaluations,
                    relative_change=change,
                )
        previous = current
        width /= 2.0
    raise QuadratureError(
        f"Critical-line integrals did not settle to {rel_tol:g} (last change {change:.3e}).",
        partial_estimate=complex(previous[powers[0]][-1]),
        error_estimate=change,
    )


def second_moment_zeta(T: float, rel_tol: float = 1e-4, workers: Optional[int] = None) -> float:
    """int_0^T |zeta(1/2 + it)|^2 dt."""
    return critical_line_integrals([T], (2,), rel_tol, workers).values[2][0]


def fourth_moment_zeta(T: float, rel_tol: float = 1e-4, workers: Optional[int] = None) -> float:
    """int_0^T |zeta(1/2 + it)|^4 dt."""
    return critical_line_integrals([T], (4,), rel_tol, workers).values[4][0]


def second_moment_main_term(T):
    """T log(T / 2 pi) + (2 gamma - 1) T."""
    T = np.asarray(T, dtype=float)
    value = T * np.log(T / (2.0 * math.pi)) + (2.0 * np.euler_gamma - 1.0) * T
    return float(value) if value.ndim == 0 else value


def _integrals_for(power: int, T_grid, integrals: Optional[CriticalLineIntegrals], rel_tol, workers):
    if integrals is None or power not in integrals.values:
        integrals = critical_line_integrals(T_grid, (power,), rel_tol, workers)
    grid = np.asarray(integrals.T_grid)
    wanted = _validated_grid(T_grid)
    idx = np.searchsorted(grid, wanted)
    if np.any(idx >= grid.size) or np.any(grid[np.minimum(idx, grid.size - 1)] != wanted):
        raise DomainError("The supplied integrals do not cover the requested T-grid.")
    return wanted, np.asarray(integrals.values[power])[idx]


def fit_second_moment(
    T_grid: Sequence[float] = DEFAULT_FIT_GRID,
    integrals: Optional[CriticalLineIntegrals] = None,
    rel_tol: float = 1e-4,
    workers: Optional[int] = None,
) -> MomentReport:
    """
    Linear fit of I_2(T)/T against log T; the slope estimates the leading coefficient 1.

    Pass ``integrals`` to reuse zeta evaluations shared with the fourth moment.

    Raises:
        DomainError: For fewer than two heights or heights below 10.
    """
    start = time.perf_counter()
    if len(set(T_grid)) < 2 or min(T_grid) < 10.0:
        raise DomainError("The second-moment fit needs at least two heights T >= 10.")
    grid, values = _integrals_for(2, T_grid, integrals, rel_tol, workers)
    log_t, normalised = np.log(grid), values / grid
    coefficients = np.polyfit(log_t, normalised, 1)
    residual = float(np.sqrt(np.mean((np.polyval(coefficients, log_t) - normalised) ** 2)))
    logger.info("Second moment: slope %.4f over T in [%g, %g]", coefficients[0], grid[0], grid[-1])
    return MomentReport(
        power=2,
        T_grid=grid.tolist(),
        integrals=values.tolist(),
        fitted_coefficients=coefficients.tolist(),
        residuals=residual,
        runtime_seconds=time.perf_counter() - start,
        main_terms=np.atleast_1d(second_moment_main_term(grid)).tolist(),
    )


def fit_fourth_moment(
    T_grid: Sequence[float] = DEFAULT_FIT_GRID,
    integrals: Optional[CriticalLineIntegrals] = None,
    rel_tol: float = 1e-4,
    workers: Optional[int] = None,
) -> MomentReport:
    """
    Fit of I_4(T)/T by c4 (log T)^4 + c3 (log T)^3; c4 estimates 1/(2 pi^2).

    Only the two top powers of the quartic are fitted: over a log-range of width about 2
    the full quartic basis is numerically singular.

    Raises:
        DomainError: For fewer than two heights or heights below 10.
    """
    start = time.perf_counter()
    if len(set(T_grid)) < 2 or min(T_grid) < 10.0:
        raise DomainError("The fourth-moment fit needs at least two heights T >= 10.")
    grid, values = _integrals_for(4, T_grid, integrals, rel_tol, workers)
    log_t, normalised = np.log(grid), values / grid
    design = np.column_stack([log_t**4, log_t**3])
    coefficients, *_ = np.linalg.lstsq(design, normalised, rcond=None)
    residual = float(np.sqrt(np.mean((design @ coefficients - normalised) ** 2)))
    logger.info(
        "Fourth moment: leading coefficient %.5f (%.3f of 1/(2 pi^2))",
        coefficients[0], coefficients[0] / FOURTH_MOMENT_COEFFICIENT,
    )
    return MomentReport(
        power=4,
        T_grid=grid.tolist(),
        integrals=values.tolist(),
        fitted_coefficients=coefficients.tolist(),
        residuals=residual,
        runtime_seconds=time.perf_counter() - start,
    )
