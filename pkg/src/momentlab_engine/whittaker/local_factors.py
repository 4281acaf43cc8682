import logging
import math
from typing import Optional

import numpy as np

from ..core.exceptions import DivergenceError, DomainError, PoleError
from ..numerics import QuadratureSpec, resolve_spec
from .models import LocalCharacter, LocalSatakeData, TruncatedSum

logger = logging.getLogger(__name__)

# Below this separation the Satake parameters are treated as equal.
DEGENERATE_SATAKE = 1e-8
_MAX_TERMS = 100_000


def local_l_factor(chi: LocalCharacter, q: int, s: complex) -> complex:
    """
    Euler factor (1 - chi(w) q^{-s})^{-1} of an unramified character.

    A zero value at the uniformizer stands for a ramified placeholder and gives 1.

    Raises:
        PoleError: If chi(w) q^{-s} = 1.
    """
    c = chi.value_at_uniformizer
    if c == 0:
        return 1.0 + 0j
    x = c * complex(q) ** (-complex(s))
    if abs(1.0 - x) < 1e-15:
        raise PoleError("local_l_factor", f"chi(w) q^(-s) = {x} hits 1.")
    return 1.0 / (1.0 - x)


def gl2_local_l_factor(data: LocalSatakeData, twist: LocalCharacter) -> complex:
    """(1 - alpha c)^{-1} (1 - beta c)^{-1} with c = twist(w)."""
    c = twist.value_at_uniformizer
    a, b = 1.0 - data.alpha * c, 1.0 - data.beta * c
    if abs(a) < 1e-15 or abs(b) < 1e-15:
        raise PoleError("gl2_local_l_factor", f"Satake parameter times {c} hits 1.")
    return 1.0 / (a * b)


def _complete_symmetric(alpha: complex, beta: complex, m: np.ndarray) -> np.ndarray:
    # h_m(alpha, beta) = sum_{i+j=m} alpha^i beta^j
    m = np.asarray(m)
    if abs(alpha - beta) < DEGENERATE_SATAKE:
        return (m + 1) * np.power(complex(alpha), m)
    return (np.power(complex(alpha), m + 1) - np.power(complex(beta), m + 1)) / (alpha - beta)


def _whittaker_values(data: LocalSatakeData, m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    values = _complete_symmetric(data.alpha, data.beta, np.maximum(m, 0)) * float(data.q) ** (-0.5 * np.maximum(m, 0))
    return np.where(m < 0, 0.0, values)


def casselman_shalika(data: LocalSatakeData, m: int) -> complex:
    """
    Spherical Whittaker function on diag(w^m, 1):
    q^{-m/2} (alpha^{m+1} - beta^{m+1}) / (alpha - beta), and 0 for m < 0.

    When |alpha - beta| < 1e-8 the limit (m + 1) alpha^m q^{-m/2} is used.
    """
    return complex(_whittaker_values(data, np.array([int(m)]))[0])


def _geometric_terms(ratio: float, tol: float) -> int:
    # smallest n with sum_{m >= n} (m + 1) r^m <= tol
    if ratio == 0.0:
        return 1
    n = 1
    while ratio**n * (n / (1.0 - ratio) + 1.0 / (1.0 - ratio) ** 2) > tol:
        n += 1
        if n > _MAX_TERMS:
            raise DivergenceError(
                f"Local series with ratio {ratio:.6f} needs more than {_MAX_TERMS} terms.",
                partial_sum=None,
                tail_bound=float("inf"),
            )
    return n


def _tail(ratio: float, n: int) -> float:
    return ratio**n * (n / (1.0 - ratio) + 1.0 / (1.0 - ratio) ** 2)


def _series_ratio(data: LocalSatakeData, x: complex, what: str) -> float:
    ratio = max(abs(data.alpha), abs(data.beta)) * abs(x)
    if ratio >= 1.0:
        raise DivergenceError(
            f"{what}: geometric ratio {ratio:.6f} >= 1, the local series diverges.",
            partial_sum=None,
            tail_bound=float("inf"),
        )
    return ratio


def hecke_local_integral(
    data: LocalSatakeData,
    s: complex,
    truncation: Optional[int] = None,
    spec: Optional[QuadratureSpec] = None,
) -> TruncatedSum:
    """
    Hecke-type local integral sum_{m >= 0} W(m) q^{-m(s - 1/2)} with W = casselman_shalika.

    The limit is (1 - alpha q^{-s})^{-1} (1 - beta q^{-s})^{-1}.

    Args:
        data (LocalSatakeData): Local data of the form.
        s (complex): Spectral variable.
        truncation (Optional[int]): Last index summed; chosen from the tolerance when omitted.
        spec (Optional[QuadratureSpec]): Tolerances.

    Returns:
        TruncatedSum: Partial sum with the geometric tail bound.

    Raises:
        DivergenceError: If |alpha q^{-s}| or |beta q^{-s}| is >= 1.
    """
    spec = resolve_spec(spec)
    x = complex(data.q) ** (-complex(s))
    ratio = _series_ratio(data, x, "hecke_local_integral")
    terms = truncation + 1 if truncation is not None else _geometric_terms(ratio, spec.tolerance(1.0))
    m = np.arange(terms)
    values = _whittaker_values(data, m) * np.power(complex(data.q) ** (0.5 - complex(s)), m)
    return TruncatedSum(value=complex(values.sum()), terms=terms, tail_bound=_tail(ratio, terms))


def local_moment_factor(
    f1: LocalSatakeData,
    f2: LocalSatakeData,
    chi0: LocalCharacter,
    chi: LocalCharacter,
    truncation: Optional[int] = None,
    spec: Optional[QuadratureSpec] = None,
) -> TruncatedSum:
    """
    Local factor of the moment integral at an unramified place:
    sum_{m, m' >= 0} W1(m) conj(W2(m')) chi0(w)^m chi(w)^{m' - m}.

    The double sum factors as L(chi0 chi^{-1} |.|^{1/2}, f1) L(chi |.|^{1/2}, conj f2).

    Raises:
        DomainError: If the two forms live at places with different q.
        DivergenceError: If either implied Euler factor diverges.
    """
    if f1.q != f2.q:
        raise DomainError(f"local_moment_factor needs one place, got q = {f1.q} and q = {f2.q}.")
    spec = resolve_spec(spec)
    c0, c = chi0.value_at_uniformizer, chi.value_at_uniformizer
    if c == 0:
        raise DomainError("local_moment_factor needs chi(w) != 0.")
    root_q = math.sqrt(f1.q)
    ratio1 = _series_ratio(f1, c0 / c / root_q, "local_moment_factor (first factor)")
    ratio2 = _series_ratio(f2, c / root_q, "local_moment_factor (second factor)")
    tol = spec.tolerance(1.0)
    if truncation is not None:
        n1 = n2 = truncation + 1
    else:
        n1, n2 = _geometric_terms(ratio1, tol), _geometric_terms(ratio2, tol)
    m1, m2 = np.arange(n1), np.arange(n2)
    row = _whittaker_values(f1, m1) * np.power(c0 / c, m1)
    col = np.conj(_whittaker_values(f2, m2)) * np.power(c, m2)
    value = complex(np.outer(row, col).sum())
    head1 = 1.0 / (1.0 - ratio1) ** 2
    head2 = 1.0 / (1.0 - ratio2) ** 2
    tail = _tail(ratio1, n1) * head2 + _tail(ratio2, n2) * head1
    logger.debug("local_moment_factor: %d x %d terms, tail bound %.2e", n1, n2, tail)
    return TruncatedSum(value=value, terms=n1 * n2, tail_bound=tail)
