import logging
from typing import Iterable, Optional

from ..core.config_loader import load_app_config
from ..core.exceptions import CheckFailure, DomainError
from ..core.parallel import ordered_map
from ..kernels import LocalCharacterParams, k_exact_complex
from ..numerics import QuadratureSpec
from .models import PositivityReport, PositivityRow

logger = logging.getLogger(__name__)

POSITIVITY_TOLERANCE = 1e-8
STANDARD_T_GRID = (0.0, 1.0, 5.0, 10.0)


def _row(t: float, w: float, mu: float, chi: LocalCharacterParams, spec: Optional[QuadratureSpec]) -> PositivityRow:
    kernel = k_exact_complex(t, w, chi, mu, spec)
    value = complex(kernel.value)
    magnitude = abs(value)
    nonnegative = value.real >= -POSITIVITY_TOLERANCE * magnitude and abs(value.imag) <= POSITIVITY_TOLERANCE * magnitude
    return PositivityRow(t=t, value=value, error_estimate=kernel.error_estimate, nonnegative=nonnegative)


def landau_positivity_probe(
    w: float,
    mu: float,
    chi: LocalCharacterParams,
    t_grid: Iterable[float] = STANDARD_T_GRID,
    spec: Optional[QuadratureSpec] = None,
    workers: Optional[int] = None,
    raise_on_failure: bool = False,
) -> PositivityReport:
    """
    Evaluates the positive complex-place kernel over a t-grid (v = 0, Re s = 1/2) and records
    whether every value is real and nonnegative up to 1e-8 of its magnitude.

    Args:
        w (float): Real weight exponent, w > 1.
        mu (float): Real spectral parameter.
        chi (LocalCharacterParams): (t_nu, ell_nu) at the complex place.
        t_grid (Iterable[float]): Heights to probe.
        spec (Optional[QuadratureSpec]): Tolerances of the kernel quadrature.
        workers (Optional[int]): Threads over the grid; configuration default when omitted.
        raise_on_failure (bool): Raise instead of reporting a violation.

    Returns:
        PositivityReport: One row per t, in grid order.

    Raises:
        DomainError: If w <= 1.
        CheckFailure: On a violation when ``raise_on_failure`` is set.
    """
    w, mu = float(w), float(mu)
    if w <= 1.0:
        raise DomainError(f"The positivity probe needs real w > 1, got {w:g}.")
    workers = workers if workers is not None else load_app_config().execution.workers
    t_values = [float(t) for t in t_grid]
    rows = ordered_map(lambda t: _row(t, w, mu, chi, spec), t_values, workers)
    worst = min((row.value.real / abs(row.value) if row.value != 0 else 1.0) for row in rows)
    report = PositivityReport(
        w=w, mu=mu, ell=chi.ell_nu, t_nu=chi.t_nu, rows=rows,
        all_nonnegative=all(row.nonnegative for row in rows), worst_relative=worst,
    )
    if not report.all_nonnegative:
        failing = [row.t for row in rows if not row.nonnegative]
        logger.warning("Positivity violated at t = %s (w=%g, mu=%g, ell=%d)", failing, w, mu, chi.ell_nu)
        if raise_on_failure:
            raise CheckFailure(
                "moments.landau_positivity",
                measured=worst,
                threshold=-POSITIVITY_TOLERANCE,
                message=f"k_exact_complex is not nonnegative at t = {failing}.",
            )
    return report
