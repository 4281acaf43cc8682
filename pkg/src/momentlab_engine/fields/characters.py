import itertools
import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..core.exceptions import CharacterLatticeException, DomainError
from .models import CharacterBudget, HeckeCharacter, MomentBudget, NumberField

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# Below this |det| the place/unit system is treated as singular.
_SINGULAR_DET = 1e-12
_BUDGET_GRID = 2049


def _lattice_system(field: NumberField) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of [d; L] together with the unit-log and unit-argument matrices."""
    places = field.place_count
    logs = np.array(field.unit_log_matrix, dtype=float).reshape(field.unit_rank, places)
    system = np.vstack([field.local_degrees[None, :], logs])
    det = np.linalg.det(system)
    if abs(det) < _SINGULAR_DET:
        raise CharacterLatticeException(field.name, f"unit matrix is singular (det={det:.3e}); regulator near 0")
    return np.linalg.inv(system), logs, field.unit_arguments()


def _ell_candidates(field: NumberField, ell_bound: int) -> List[Tuple[int, ...]]:
    w = field.roots_of_unity
    k = field.torsion_exponents()
    rng = range(-ell_bound, ell_bound + 1)
    return [ell for ell in itertools.product(rng, repeat=field.r2) if sum(a * b for a, b in zip(ell, k)) % w == 0]


def character_lattice(field: NumberField, bound: float, ell_bound: Optional[float] = None) -> List[HeckeCharacter]:
    """
    Enumerates the absolutely unramified spherical Hecke characters of ``field``
    with max(|t_v|, |ell_v|) <= bound.

    The conditions are: sum_v d_v t_v = 0 (trivial on the positive reals),
    chi(eps_j) = 1 for every fundamental unit, i.e.
    sum_v t_v d_v log|eps_j|_v - sum_c ell_c arg(eps_j)_c in 2 pi Z, and
    chi(zeta) = 1 for the generating root of unity. For each admissible ell the
    integer vector m of the unit conditions determines t through [d; L] t = (0, 2 pi m + Theta ell).

    Args:
        field (NumberField): The number field.
        bound (float): Box bound on |t_v| and |ell_v|.
        ell_bound (Optional[float]): Tighter bound on |ell_v| only.

    Returns:
        List[HeckeCharacter]: Characters sorted by (max |t|, ell, t); closed under inversion.

    Raises:
        DomainError: If bound <= 0.
        CharacterLatticeException: If the unit matrix is numerically singular.
    """
    if bound <= 0:
        raise DomainError("character_lattice needs bound > 0.")
    inv_system, logs, args = _lattice_system(field)
    d = field.local_degrees
    rank = field.unit_rank
    ell_cap = int(math.floor(bound if ell_bound is None else min(bound, ell_bound)))
    found = []
    for ell in _ell_candidates(field, ell_cap):
        ell_vec = np.array(ell, dtype=float)
        shift = args @ ell_vec if rank else np.zeros(0)
        if rank:
            reach = (np.abs(logs).sum(axis=1) * bound + np.abs(shift)) / TWO_PI + 1.0
            ranges = [np.arange(-math.ceil(r), math.ceil(r) + 1) for r in reach]
            m_grid = np.array(np.meshgrid(*ranges, indexing="ij")).reshape(rank, -1).T
        else:
            m_grid = np.zeros((1, 0))
        rhs = np.hstack([np.zeros((m_grid.shape[0], 1)), TWO_PI * m_grid + shift[None, :]])
        t_grid = rhs @ inv_system.T
        # enforce sum d_v t_v = 0 through the last place
        t_grid[:, -1] = -(t_grid[:, :-1] @ d[:-1]) / d[-1]
        t_grid[np.abs(t_grid) < 1e-13] = 0.0
        keep = np.max(np.abs(t_grid), axis=1) <= bound + 1e-12
        for m, t in zip(m_grid[keep], t_grid[keep]):
            label = f"m={tuple(int(x) for x in m)}" + (f" ell={ell}" if field.r2 else "")
            found.append(HeckeCharacter(t_values=tuple(float(x) for x in t), ell_values=tuple(ell), label=label))
    found.sort(key=lambda c: (max((abs(x) for x in c.t_values), default=0.0), c.ell_values, c.t_values))
    logger.debug("Field %s: %d characters within bound %g", field.name, len(found), bound)
    return found


def inverse_character(chi: HeckeCharacter) -> HeckeCharacter:
    return chi.inverse()


def character_value(chi: HeckeCharacter, place_index: int, z: complex) -> complex:
    """
    Local component chi_v(z): |z|^{i t_v} at a real place, |z|^{ell + 2 i t_v} z^{-ell}
    at a complex place (|z|_v = |z|^2 there).

    Raises:
        DomainError: If z = 0 or the place index is out of range.
    """
    if not 0 <= place_index < len(chi.t_values):
        raise DomainError(f"place index {place_index} out of range for {len(chi.t_values)} places.")
    zc = complex(z)
    if zc == 0:
        raise DomainError("character_value is undefined at z = 0.")
    r = abs(zc)
    t = chi.t_values[place_index]
    if place_index < chi.r1:
        return complex(np.exp(1j * t * math.log(r)))
    ell = chi.ell_values[place_index - chi.r1]
    theta = math.atan2(zc.imag, zc.real)
    return complex(np.exp(1j * (2.0 * t * math.log(r) - ell * theta)))


def unit_character_value(field: NumberField, chi: HeckeCharacter, unit_index: int) -> complex:
    """chi(eps) for a fundamental unit, rebuilt from its logarithmic embedding and arguments."""
    logs = field.unit_log_matrix[unit_index]
    args = field.unit_arguments()[unit_index]
    value = 1.0 + 0j
    for v in range(field.place_count):
        if v < field.r1:
            embedding = complex(math.exp(logs[v]))
        else:
            c = v - field.r1
            embedding = math.exp(0.5 * logs[v]) * complex(math.cos(args[c]), math.sin(args[c]))
        value *= character_value(chi, v, embedding)
    return value


def torsion_character_value(field: NumberField, chi: HeckeCharacter) -> complex:
    """chi(zeta) for the generator zeta of the roots of unity."""
    value = 1.0 + 0j
    for c, k in enumerate(field.torsion_exponents()):
        angle = TWO_PI * k / field.roots_of_unity
        value *= character_value(chi, field.r1 + c, complex(math.cos(angle), math.sin(angle)))
    return value


def kappa_chi(field: NumberField, chi: HeckeCharacter, t):
    """
    Per-character archimedean budget
    prod_real (1 + |t + t_v|) * prod_complex (1 + ell_v^2 + 4 (t + t_v)^2); always >= 1.

    Args:
        field (NumberField): The field.
        chi (HeckeCharacter): Character on that field.
        t (float or numpy.ndarray): Spectral height(s).
    """
    t_arr = np.asarray(t, dtype=float)
    value = np.ones_like(t_arr)
    for v in range(field.r1):
        value = value * (1.0 + np.abs(t_arr + chi.t_values[v]))
    for c in range(field.r2):
        shifted = t_arr + chi.t_values[field.r1 + c]
        value = value * (1.0 + chi.ell_values[c] ** 2 + 4.0 * shifted * shifted)
    return float(value) if value.ndim == 0 else value


def _sublevel_intervals(field: NumberField, chi: HeckeCharacter, T: float) -> List[Tuple[float, float]]:
    radius = (T - 1.0) if field.r1 else math.sqrt((T - 1.0) / 4.0)
    lo = max(-tv - radius for tv in chi.t_values)
    hi = min(-tv + radius for tv in chi.t_values)
    if lo >= hi:
        return []
    log_t = math.log(T)

    def excess(x):
        return np.log(kappa_chi(field, chi, x)) - log_t

    kinks = [-tv for tv in chi.t_values if lo < -tv < hi]
    grid = np.unique(np.concatenate([np.linspace(lo, hi, _BUDGET_GRID), kinks]))
    values = excess(grid)
    breaks = [lo, hi]
    breaks.extend(grid[values == 0.0].tolist())
    for i in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
        a, b = grid[i], grid[i + 1]
        breaks.append(brentq(lambda x: float(excess(x)), a, b, xtol=1e-13 * max(1.0, abs(a)), rtol=4.0 * np.finfo(float).eps))
    breaks = np.unique(breaks)
    mids = 0.5 * (breaks[:-1] + breaks[1:])
    inside = excess(mids) < 0.0
    intervals: List[Tuple[float, float]] = []
    for (a, b), flag in zip(zip(breaks[:-1], breaks[1:]), inside):
        if not flag:
            continue
        if intervals and intervals[-1][1] == a:
            intervals[-1] = (intervals[-1][0], float(b))
        else:
            intervals.append((float(a), float(b)))
    return intervals


def moment_budget(field: NumberField, T: float, keep_details: bool = False) -> MomentBudget:
    """
    Counts the characters whose window {t : kappa_chi(t) <= T} has positive measure
    and sums those measures. Window edges are located with Brent's method.

    Raises:
        DomainError: If T <= 1.
    """
    if T <= 1.0:
        raise DomainError("moment_budget needs T > 1.")
    bound = max(2.0 * (T - 1.0), math.sqrt(T - 1.0)) + 1.0
    chars = character_lattice(field, bound, ell_bound=math.sqrt(T - 1.0))
    budgets = []
    for chi in chars:
        intervals = _sublevel_intervals(field, chi, T)
        measure = sum(b - a for a, b in intervals)
        if measure > 0.0:
            budgets.append(CharacterBudget(character=chi, measure=measure, intervals=intervals))
    total = math.fsum(b.measure for b in budgets)
    logger.info("moment_budget(%s, T=%g): %d characters, measure %.6g", field.name, T, len(budgets), total)
    return MomentBudget(
        T=T,
        character_count=len(budgets),
        total_measure=total,
        per_character=budgets if keep_details else [],
    )


def pole_order(field: NumberField) -> int:
    """Order r1 + r2 + 1 of the leading pole at w = 1 when f1 = f2."""
    return field.r1 + field.r2 + 1
