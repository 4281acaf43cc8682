import functools
import logging
import math
import time
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from ..core.config_loader import load_app_config
from ..core.exceptions import DomainError, MomentLabException
from ..core.parallel import ordered_map
from ..fields import PlaceType, builtin_field, character_lattice, moment_budget, unit_character_value
from ..fields import torsion_character_value
from ..kernels import (
    LocalCharacterParams,
    MeasureConvention,
    SpectralParams,
    g_complex,
    g_real,
    k_asym_main,
    k_exact_complex,
    mellin_identity_check,
    r_eisenstein,
)
from ..moments import (
    DEFAULT_FIT_GRID,
    FOURTH_MOMENT_COEFFICIENT,
    critical_line_integrals,
    fit_fourth_moment,
    fit_second_moment,
    landau_positivity_probe,
)
from ..numerics import QuadratureSpec, bessel_j, bessel_k, gamma
from ..padic_norms import (
    BRUTE_FORCE_MAX_LEVEL,
    BRUTE_FORCE_PRIMES,
    LocalNormParams,
    brute_force_cell_count,
    cell_index,
    global_norm_product_check,
    local_norm_integral,
)
from ..poincare import SeriesTruncation, cauchy_convergence_probe, domination_check, eval_poincare_Q
from ..whittaker import (
    DifferentData,
    LocalCharacter,
    LocalSatakeData,
    finite_mellin_whittaker,
    gl2_local_l_factor,
    hecke_local_integral,
    local_moment_factor,
    tate_brute_force_mellin,
)
from .models import CriterionResult, SuiteReport

logger = logging.getLogger(__name__)

SEED = 20240607
LOOSE = QuadratureSpec(rel_tol=1e-7, abs_tol=1e-12, max_subdivisions=12)
TIGHT = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-16)

Outcome = Tuple[Dict[str, float], Dict[str, float], bool]


class _Criterion(NamedTuple):
    identifier: str
    description: str
    run: Callable[[int], Outcome]


_REGISTRY: Dict[str, _Criterion] = {}


def criterion(identifier: str, description: str):
    """Registers a function ``workers -> (measured, threshold, passed)`` as an acceptance criterion."""
    def register(func: Callable[[int], Outcome]) -> Callable[[int], Outcome]:
        if identifier in _REGISTRY:
            raise ValueError(f"Criterion '{identifier}' registered twice.")
        _REGISTRY[identifier] = _Criterion(identifier, description, func)
        return func
    return register


def criterion_ids() -> List[str]:
    return list(_REGISTRY)


def _max_rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.abs(b)))


@criterion("special_functions", "Gamma recurrence and reflection, K_{1/2} closed form, J recurrence to 1e-10.")
def _special_functions(workers: int) -> Outcome:
    rng = np.random.default_rng(SEED)
    z = rng.uniform(-10, 30, 1000) + 1j * rng.uniform(-100, 100, 1000)
    recurrence = _max_rel(gamma(z + 1), z * gamma(z))
    z = rng.uniform(-5, 5, 500) + 1j * rng.uniform(-3, 3, 500)
    reflection = float(np.max(np.abs(gamma(z) * gamma(1 - z) * np.sin(np.pi * z) / np.pi - 1)))
    x = np.linspace(0.1, 20.0, 60)
    half_order = _max_rel(bessel_k(0.5, x), np.sqrt(np.pi / (2 * x)) * np.exp(-x))
    x = np.linspace(0.5, 20.0, 80)
    j_recurrence = max(
        float(np.max(np.abs(bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2 * n / x * bessel_j(n, x))))
        for n in range(1, 11)
    )
    measured = {
        "gamma_recurrence": recurrence,
        "gamma_reflection": reflection,
        "bessel_k_half_order": half_order,
        "bessel_j_recurrence": j_recurrence,
    }
    threshold = {key: 1e-10 for key in measured}
    return measured, threshold, all(measured[key] < threshold[key] for key in measured)


@criterion("kernel_symmetry", "g_real and g_complex invariant under s -> 1 - s at 500 random admissible points.")
def _kernel_symmetry(workers: int) -> Outcome:
    rng = np.random.default_rng(SEED)
    n = 500
    points = zip(
        rng.uniform(0.1, 0.9, n) + 1j * rng.uniform(-5, 5, n),
        rng.uniform(1.0, 3.0, n) + 1j * rng.uniform(-1, 1, n),
        rng.uniform(1.5, 4.0, n) + 1j * rng.uniform(-1, 1, n),
    )
    worst = {"g_real": 0.0, "g_complex": 0.0}
    for s, v, w in points:
        for name, kernel in (("g_real", g_real), ("g_complex", g_complex)):
            value = kernel(s, v, w)
            worst[name] = max(worst[name], abs(kernel(1 - s, v, w) - value) / abs(value))
    threshold = {key: 1e-10 for key in worst}
    return worst, threshold, all(worst[key] <= 1e-10 for key in worst)


@criterion("mellin_identity", "Real-place Mellin identity on a 3x3x3 (s, v, w) grid, relative gap < 1e-6.")
def _mellin_identity(workers: int) -> Outcome:
    grid = [(s, v, w) for s in (0.35, 0.5, 0.65) for v in (1.0, 1.2, 1.5) for w in (2.0, 2.5, 3.0)]
    checks = ordered_map(lambda p: mellin_identity_check(PlaceType.REAL, *p, LOOSE), grid, workers)
    worst = max(check.relative_gap for check in checks)
    return {"max_relative_gap": worst}, {"max_relative_gap": 1e-6}, worst < 1e-6


@criterion("exact_vs_asymptotic", "|k_exact / k_asym_main - 1| <= 0.15 at t = 10, <= 0.10 at t = 20, decreasing in t.")
def _exact_vs_asymptotic(workers: int) -> Outcome:
    chi, mu = LocalCharacterParams(), SpectralParams.diagonal(0.1)
    heights = (5.0, 10.0, 20.0, 40.0)

    def deviation(t: float) -> float:
        exact = k_exact_complex(t, 2.0, chi, mu, LOOSE).value
        main = k_asym_main(PlaceType.COMPLEX, t, 0, 2.0, chi, mu, MeasureConvention.INTEGRAL).value
        return abs(exact / main - 1.0)

    deviations = dict(zip(heights, ordered_map(deviation, heights, workers)))
    measured = {f"deviation_t{t:g}": d for t, d in deviations.items()}
    decreasing = all(deviations[b] <= deviations[a] for a, b in zip(heights, heights[1:]))
    passed = deviations[10.0] <= 0.15 and deviations[20.0] <= 0.10 and decreasing
    return measured, {"deviation_t10": 0.15, "deviation_t20": 0.10}, passed


@criterion("landau_positivity", "k_exact_complex real and nonnegative on the standard grid for ell = 0 and 4.")
def _landau_positivity(workers: int) -> Outcome:
    reports = [
        landau_positivity_probe(2.0, 0.1, LocalCharacterParams(ell_nu=ell), spec=LOOSE, workers=workers)
        for ell in (0, 4)
    ]
    worst = min(report.worst_relative for report in reports)
    return {"worst_relative": worst}, {"worst_relative": -1e-8}, all(r.all_nonnegative for r in reports)


def _unit(rng) -> complex:
    return complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))


@criterion("whittaker_closed_forms", "Finite Mellin vs Tate sums to 1e-12, Hecke and moment factors vs Euler products to 1e-10.")
def _whittaker_closed_forms(workers: int) -> Outcome:
    rng = np.random.default_rng(SEED)
    tate = 0.0
    for _ in range(20):
        q = int(rng.choice([2, 3, 5]))
        d = DifferentData(q=q, delta=int(rng.integers(0, 2)))
        chi = LocalCharacter(value_at_uniformizer=_unit(rng))
        s = complex(rng.uniform(0.6, 1.0), rng.uniform(-5, 5))
        v = complex(rng.uniform(1.0, 2.0), rng.uniform(-5, 5))
        closed = finite_mellin_whittaker(chi, q, d, s, v)
        oracle = tate_brute_force_mellin(chi, q, d, s, v, spec=TIGHT)
        tate = max(tate, max(0.0, abs(oracle.value - closed) - oracle.tail_bound) / max(1.0, abs(closed)))
    hecke = 0.0
    for _ in range(20):
        data = LocalSatakeData(q=int(rng.choice([2, 3, 5])), alpha=_unit(rng), beta=_unit(rng), central_ok=True)
        s = complex(rng.uniform(0.6, 2.0), rng.uniform(-10, 10))
        expected = gl2_local_l_factor(data, LocalCharacter.absolute_value_power(data.q, s))
        hecke = max(hecke, abs(hecke_local_integral(data, s, spec=TIGHT).value - expected) / abs(expected))
    moment = 0.0
    for _ in range(10):
        q = int(rng.choice([2, 3, 5]))
        f1 = LocalSatakeData(q=q, alpha=_unit(rng), beta=_unit(rng))
        f2 = LocalSatakeData(q=q, alpha=_unit(rng), beta=_unit(rng))
        chi = LocalCharacter(value_at_uniformizer=_unit(rng) * q**-0.3)
        chi0 = LocalCharacter(value_at_uniformizer=_unit(rng) * q**-0.6)
        half = LocalCharacter.absolute_value_power(q, 0.5)
        expected = gl2_local_l_factor(f1, chi0.times(chi.inverse()).times(half)) * gl2_local_l_factor(
            f2.conjugate(), chi.times(half)
        )
        value = local_moment_factor(f1, f2, chi0, chi, spec=TIGHT).value
        moment = max(moment, abs(value - expected) / abs(expected))
    measured = {"tate": tate, "hecke": hecke, "moment": moment}
    threshold = {"tate": 1e-12, "hecke": 1e-10, "moment": 1e-10}
    return measured, threshold, all(measured[k] <= threshold[k] for k in measured)


@criterion("padic_norms", "Cell counts match enumeration, local integrals below their bound, Euler product within 1e-6.")
def _padic_norms(workers: int) -> Outcome:
    pairs = [(p, ell) for p in BRUTE_FORCE_PRIMES for ell in range(1, BRUTE_FORCE_MAX_LEVEL + 1)]
    counts = ordered_map(lambda pair: brute_force_cell_count(*pair), pairs, workers)
    mismatches = sum(count != cell_index(p, ell) for (p, ell), count in zip(pairs, counts))
    violations = 0
    for q in (2, 3, 5, 7):
        for sigma in (1.5, 2.0, 3.0, 5.0):
            result = local_norm_integral(LocalNormParams(q=q, sigma=sigma))
            violations += result.exact > result.upper_bound
    product = global_norm_product_check(3.0, 3.0, 100_000)
    measured = {"cell_mismatches": float(mismatches), "bound_violations": float(violations), "euler_gap": product.gap}
    threshold = {"cell_mismatches": 0.0, "bound_violations": 0.0, "euler_gap": 1e-6}
    return measured, threshold, mismatches == 0 and violations == 0 and product.gap < 1e-6


@criterion("poincare_series", "Cauchy partial sums at v = w = 2.5, bounded domination, exact translation invariance, divergence at v = 0.5.")
def _poincare_series(workers: int) -> Outcome:
    z = complex(0.2, 1.3)
    cauchy = cauchy_convergence_probe(z, 2.5, 2.5, workers=workers)
    grid = [complex(x, y) for x in (0.0, 0.25, 0.5) for y in (0.5, 1.0, 2.0, 5.0, 10.0, 100.0)]
    domination = domination_check(grid, 3.0, 3.0, 0.25, SeriesTruncation(coprime_bound=60), workers=workers)
    small = SeriesTruncation(coprime_bound=40)
    shifted = eval_poincare_Q(z + 1, 2.5, 2.5, small, workers=workers).value
    translation_gap = abs(shifted - eval_poincare_Q(z, 2.5, 2.5, small, workers=workers).value)
    divergent = cauchy_convergence_probe(z, 0.5, 2.5, ladder=(10, 20, 40, 80), enforce_region=False, workers=workers)
    measured = {
        "final_relative_increment": cauchy.final_relative_increment,
        "domination_constant": domination.constant,
        "translation_gap": translation_gap,
        "divergence_detected": float(not divergent.converged),
    }
    passed = (
        cauchy.converged
        and math.isfinite(domination.constant)
        and translation_gap == 0.0
        and not divergent.converged
    )
    return measured, {"translation_gap": 0.0, "divergence_detected": 1.0}, passed


@criterion("eisenstein_pole", "(w - 1)^(r1 + r2) r_eisenstein(w) has a finite nonzero limit at w = 1; 2 for Q.")
def _eisenstein_pole(workers: int) -> Outcome:
    measured, passed = {}, True
    for name in ("Q", "Q_i", "Q_sqrt2"):
        field = builtin_field(name)
        order = field.r1 + field.r2
        limits = []
        for eps in (1e-6, 1e-7):
            w = 1.0 + eps
            limits.append(abs((w - 1.0) ** order * r_eisenstein(field, w)))
        drift = abs(limits[1] - limits[0]) / limits[1]
        measured[f"{name}_limit"] = limits[1]
        measured[f"{name}_drift"] = drift
        passed = passed and math.isfinite(limits[1]) and limits[1] > 0 and drift < 1e-4
    measured["Q_error"] = abs(measured["Q_limit"] - 2.0)
    return measured, {"Q_error": 1e-6}, passed and measured["Q_error"] < 1e-6


@functools.lru_cache(maxsize=2)
def _classical_integrals(workers: int):
    return critical_line_integrals(DEFAULT_FIT_GRID, (2, 4), workers=workers)


@criterion("second_moment", "Slope of I_2(T)/T against log T over T in {500, ..., 4000} is 1 +- 0.1.")
def _second_moment(workers: int) -> Outcome:
    report = fit_second_moment(DEFAULT_FIT_GRID, integrals=_classical_integrals(workers), workers=workers)
    slope = report.leading_coefficient
    return {"slope": slope}, {"slope_deviation": 0.1}, abs(slope - 1.0) <= 0.1


@criterion("fourth_moment", "Leading log^4 coefficient within [0.5, 1.6] of 1/(2 pi^2), improving as T_max doubles.")
def _fourth_moment(workers: int) -> Outcome:
    integrals = _classical_integrals(workers)
    full = fit_fourth_moment(DEFAULT_FIT_GRID, integrals=integrals, workers=workers)
    half = fit_fourth_moment(DEFAULT_FIT_GRID[:-1], integrals=integrals, workers=workers)
    ratio = full.leading_coefficient / FOURTH_MOMENT_COEFFICIENT
    ratio_half = half.leading_coefficient / FOURTH_MOMENT_COEFFICIENT
    passed = 0.5 <= ratio <= 1.6 and abs(ratio - 1.0) <= abs(ratio_half - 1.0)
    return {"ratio": ratio, "ratio_half_range": ratio_half}, {"ratio_min": 0.5, "ratio_max": 1.6}, passed


@criterion("character_machinery", "Characters trivial on units to 1e-10 with sum d t = 0; budget exponent in [0.9, 1.1] on Q(i).")
def _character_machinery(workers: int) -> Outcome:
    unit_error, trace_error = 0.0, 0.0
    for name in ("Q_sqrt2", "Q_i"):
        field = builtin_field(name)
        for chi in character_lattice(field, 20.0):
            trace_error = max(trace_error, abs(float(np.dot(field.local_degrees, chi.t_values))))
            for j in range(field.unit_rank):
                unit_error = max(unit_error, abs(unit_character_value(field, chi, j) - 1))
            unit_error = max(unit_error, abs(torsion_character_value(field, chi) - 1))
    field = builtin_field("Q_i")
    heights = np.array([1e2, 1e3, 1e4])
    measures = ordered_map(lambda T: moment_budget(field, float(T)).total_measure, heights, workers)
    exponent = float(np.polyfit(np.log(heights), np.log(measures), 1)[0])
    measured = {"unit_error": unit_error, "trace_error": trace_error, "budget_exponent": exponent}
    passed = unit_error < 1e-10 and trace_error < 1e-9 and 0.9 <= exponent <= 1.1
    return measured, {"unit_error": 1e-10, "exponent_min": 0.9, "exponent_max": 1.1}, passed


def _run_one(entry: _Criterion, workers: int) -> CriterionResult:
    start = time.perf_counter()
    error = ""
    try:
        measured, threshold, passed = entry.run(workers)
    except MomentLabException as e:
        logger.error("Criterion %s stopped: %s", entry.identifier, e.message)
        measured, threshold, passed, error = {}, {}, False, e.message
    runtime = time.perf_counter() - start
    logger.info("%s: %s in %.1f s %s", entry.identifier, "PASS" if passed else "FAIL", runtime, measured)
    return CriterionResult(
        identifier=entry.identifier,
        description=entry.description,
        measured={k: float(v) for k, v in measured.items()},
        threshold=threshold,
        passed=bool(passed),
        runtime_seconds=runtime,
        error=error,
    )


def run_acceptance_suite(selection: Optional[Iterable[str]] = None, workers: Optional[int] = None) -> SuiteReport:
    """
    Runs the registered acceptance criteria in registration order.

    Args:
        selection (Optional[Iterable[str]]): Identifiers to run; all criteria when omitted.
        workers (Optional[int]): Threads for grid evaluations; configuration default when omitted.

    Returns:
        SuiteReport: One result per criterion. A criterion stopped by a library exception
        is reported as failed with the exception message.

    Raises:
        DomainError: For an unknown identifier in ``selection``.
    """
    workers = workers if workers is not None else load_app_config().execution.workers
    wanted = list(_REGISTRY) if selection is None else list(selection)
    unknown = [name for name in wanted if name not in _REGISTRY]
    if unknown:
        raise DomainError(f"Unknown acceptance criteria {unknown}; known: {list(_REGISTRY)}.")
    order = [name for name in _REGISTRY if name in wanted]
    return SuiteReport(results=[_run_one(_REGISTRY[name], workers) for name in order])
