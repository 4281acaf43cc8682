import logging
from typing import Optional

import numpy as np

from ..core.exceptions import DivergenceError, DomainError
from ..numerics import QuadratureSpec, resolve_spec
from .local_factors import local_l_factor
from .models import DifferentData, LocalCharacter, TruncatedSum

logger = logging.getLogger(__name__)

_MAX_VALUATION = 20_000


def finite_mellin_whittaker(chi: LocalCharacter, q: int, d: DifferentData, s: complex, v: complex) -> complex:
    """
    Mellin transform of the unramified Eisenstein Whittaker function at a finite place:
    |d|^{1/2} L(v+s, chi) L(v+1-s, chi^{-1}) / L(2s, chi^2) * |d|^{-(v+1-s)} chi(d).

    Args:
        chi (LocalCharacter): Unramified character (|.|^v twists may be folded in).
        q (int): Residue field size.
        d (DifferentData): Local different.
        s (complex): Spectral variable.
        v (complex): Mellin exponent.

    Returns:
        complex: The closed form.

    Raises:
        DomainError: If ``d`` belongs to another residue field size or chi(w) = 0.
        PoleError: If one of the numerator Euler factors has a pole.
    """
    if d.q != q:
        raise DomainError(f"Different data is for q = {d.q}, not q = {q}.")
    c = chi.value_at_uniformizer
    if c == 0:
        raise DomainError("finite_mellin_whittaker needs chi(w) != 0.")
    s, v = complex(s), complex(v)
    numerator = local_l_factor(chi, q, v + s) * local_l_factor(chi.inverse(), q, v + 1 - s)
    inverse_denominator = 1.0 - c * c * complex(q) ** (-2 * s)
    different = d.d_norm**0.5 * complex(d.d_norm) ** (-(v + 1 - s)) * c**d.delta
    return complex(different * numerator * inverse_denominator)


def tate_brute_force_mellin(
    chi: LocalCharacter,
    q: int,
    d: DifferentData,
    s: complex,
    v: complex,
    truncation: Optional[int] = None,
    spec: Optional[QuadratureSpec] = None,
) -> TruncatedSum:
    """
    Independent evaluation of the same Mellin transform from the Tate-integral form.

    The Whittaker function times L(2s, chi^2) is a finite sum over valuations,
    q^{-delta/2} sum_{j=-m}^{delta} chi(w)^{m+2j} q^{-m(s+v) - j(2s-1)} at valuation m >= -delta,
    which is Mellin-summed over m and then divided by L(2s, chi^2).

    Args:
        truncation (Optional[int]): Largest valuation m summed; chosen from the tolerance when omitted.

    Returns:
        TruncatedSum: Value with the geometric tail bound of the valuation sum.

    Raises:
        DivergenceError: If the valuation sum does not converge geometrically.
    """
    if d.q != q:
        raise DomainError(f"Different data is for q = {d.q}, not q = {q}.")
    c = chi.value_at_uniformizer
    if c == 0:
        raise DomainError("tate_brute_force_mellin needs chi(w) != 0.")
    spec = resolve_spec(spec)
    s, v = complex(s), complex(v)
    delta = d.delta
    step_m = c * complex(q) ** (-(s + v))
    step_j = c * c * complex(q) ** (-(2 * s - 1))
    ratio = abs(step_m) * max(1.0, 1.0 / abs(step_j))
    if ratio >= 1.0:
        raise DivergenceError(
            f"tate_brute_force_mellin: valuation sum ratio {ratio:.6f} >= 1.",
            partial_sum=None,
            tail_bound=float("inf"),
        )
    # a valuation-m term is bounded by scale * (m + delta + 1) * ratio^m
    denominator = 1.0 - c * c * complex(q) ** (-2 * s)
    scale = max(1.0, abs(step_j) ** delta) * d.d_norm**0.5 * abs(denominator)
    tol = spec.tolerance(1.0)

    def tail_after(m_last: int) -> float:
        n = m_last + 1
        return scale * ratio**n * ((n + delta + 1) / (1.0 - ratio) + ratio / (1.0 - ratio) ** 2)

    if truncation is None:
        m_last = 0
        while tail_after(m_last) > tol:
            m_last += 1
            if m_last > _MAX_VALUATION:
                raise DivergenceError(
                    "tate_brute_force_mellin: truncation exceeds the valuation limit.",
                    partial_sum=None,
                    tail_bound=tail_after(m_last),
                )
    else:
        m_last = int(truncation)
        if m_last < -delta:
            raise DomainError(f"truncation must be >= -delta = {-delta}.")

    total = 0j
    for m in range(-delta, m_last + 1):
        j = np.arange(-m, delta + 1)
        total += step_m**m * complex(np.power(step_j, j).sum())
    value = d.d_norm**0.5 * total * denominator
    logger.debug("tate_brute_force_mellin: valuations %d..%d, ratio %.4f", -delta, m_last, ratio)
    return TruncatedSum(value=complex(value), terms=m_last + delta + 1, tail_bound=tail_after(m_last))
