import logging
import math
from typing import Iterable, Optional, Sequence

from ..core.exceptions import CheckFailure, DomainError
from .models import CauchyReport, DominationReport, DominationRow, SeriesTruncation, UpperHalfPoint
from .series import Point, as_upper_half_point, eval_eisenstein_Q, eval_poincare_Q, partial_sum_table

logger = logging.getLogger(__name__)

DEFAULT_LADDER = (50, 100, 200, 400)
CAUCHY_TOLERANCE = 1e-6


def cauchy_convergence_probe(
    z: Point,
    v: complex,
    w: float,
    ladder: Sequence[int] = DEFAULT_LADDER,
    enforce_region: bool = True,
    raise_on_failure: bool = False,
    workers: Optional[int] = None,
) -> CauchyReport:
    """
    Partial sums along a ladder of truncations; the series is reported as converged when
    the increments decrease and the last one is below 1e-6 of the value.

    With ``enforce_region=False`` the probe also runs for Re v <= 1, where it reports
    non-convergence.

    Raises:
        CheckFailure: If ``raise_on_failure`` is set and the partial sums are not Cauchy.
    """
    rows = partial_sum_table(z, v, w, ladder, enforce_region=enforce_region, workers=workers)
    increments = [row.increment for row in rows[1:]]
    decreasing = all(b < a for a, b in zip(increments, increments[1:]))
    final_value = abs(rows[-1].value)
    final_relative = increments[-1] / final_value if increments and final_value > 0 else math.inf
    converged = decreasing and final_relative < CAUCHY_TOLERANCE
    logger.info(
        "Cauchy probe at z=%s, v=%s, w=%s: final relative increment %.3e (%s)",
        z, v, w, final_relative, "converged" if converged else "not converged",
    )
    if raise_on_failure and not converged:
        raise CheckFailure("poincare.cauchy", measured=final_relative, threshold=CAUCHY_TOLERANCE,
                           message="Partial sums are not Cauchy along the ladder.")
    return CauchyReport(
        rows=rows,
        increments_decreasing=decreasing,
        final_relative_increment=final_relative,
        converged=converged,
    )


def domination_check(
    points: Iterable[Point],
    v: float,
    w: float,
    epsilon: float,
    trunc: Optional[SeriesTruncation] = None,
    bound: Optional[float] = None,
    workers: Optional[int] = None,
) -> DominationReport:
    """
    Ratio of the Poincare series to E(z, v) + E(z, v + 1 + 2 epsilon) over a grid of points;
    the reported constant is the largest ratio.

    Args:
        points (Iterable[Point]): Grid of points in the upper half-plane.
        v (float): Twist exponent, v > 1 + 2 epsilon.
        w (float): Seed exponent, w > 1 + epsilon.
        epsilon (float): Positive margin.
        trunc (Optional[SeriesTruncation]): Truncation shared by all three series.
        bound (Optional[float]): When given, a ratio above it is a failure.

    Raises:
        DomainError: Outside v > 1 + 2 epsilon, w > 1 + epsilon.
        CheckFailure: If a ratio is not finite or exceeds ``bound``.
    """
    v, w, epsilon = float(v), float(w), float(epsilon)
    if epsilon <= 0 or v <= 1 + 2 * epsilon or w <= 1 + epsilon:
        raise DomainError(f"domination_check needs v > 1 + 2 eps and w > 1 + eps (v={v}, w={w}, eps={epsilon}).")
    trunc = trunc or SeriesTruncation()
    rows = []
    for z in points:
        point: UpperHalfPoint = as_upper_half_point(z)
        poincare = eval_poincare_Q(point, v, w, trunc, workers=workers).value.real
        dominant = (
            eval_eisenstein_Q(point, v, trunc).value.real
            + eval_eisenstein_Q(point, v + 1 + 2 * epsilon, trunc).value.real
        )
        ratio = poincare / dominant
        if not math.isfinite(ratio):
            raise CheckFailure("poincare.domination", measured=ratio, threshold=bound,
                               message=f"Ratio is not finite at {point.z}.")
        rows.append(DominationRow(x=point.x, y=point.y, poincare=poincare, eisenstein_sum=dominant, ratio=ratio))
    constant = max(row.ratio for row in rows)
    if bound is not None and constant > bound:
        raise CheckFailure("poincare.domination", measured=constant, threshold=bound,
                           message="Poincare series is not dominated by the Eisenstein pair.")
    return DominationReport(v=v, w=w, epsilon=epsilon, rows=rows, constant=constant)
