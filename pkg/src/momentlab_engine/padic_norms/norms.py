from fractions import Fraction
from typing import Sequence

import numpy as np

from ..core.exceptions import DomainError

Matrix = Sequence[Sequence]


def archimedean_norm(g) -> float:
    """max(|g|, |g^{-1}|) with the spectral (operator 2-) norm."""
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2):
        raise DomainError(f"archimedean_norm expects a 2x2 matrix, got shape {g.shape}.")
    if abs(np.linalg.det(g)) == 0.0:
        raise DomainError("archimedean_norm needs an invertible matrix.")
    return float(max(np.linalg.norm(g, ord=2), np.linalg.norm(np.linalg.inv(g), ord=2)))


def padic_valuation(x: Fraction, p: int) -> int:
    if x == 0:
        raise DomainError("The valuation of 0 is infinite.")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _as_fractions(g: Matrix):
    entries = [[Fraction(entry) for entry in row] for row in g]
    if len(entries) != 2 or any(len(row) != 2 for row in entries):
        raise DomainError("Expected a 2x2 matrix of rationals.")
    (a, b), (c, d) = entries
    det = a * d - b * c
    if det == 0:
        raise DomainError("The matrix is not invertible.")
    return entries, det


def _sup_norm(entries, p: int) -> Fraction:
    valuations = [padic_valuation(x, p) for row in entries for x in row if x != 0]
    return Fraction(p) ** (-min(valuations))


def padic_norm(g: Matrix, p: int) -> Fraction:
    """
    max(|g|_p, |g^{-1}|_p) for a rational 2x2 matrix, with the sup-norm of the p-adic
    absolute values of the entries.
    """
    entries, det = _as_fractions(g)
    (a, b), (c, d) = entries
    inverse = [[d / det, -b / det], [-c / det, a / det]]
    return max(_sup_norm(entries, p), _sup_norm(inverse, p))


def primitive_representative(g: Matrix, p: int):
    """The multiple p^k g whose entries are p-integral with at least one unit."""
    entries, _ = _as_fractions(g)
    shift = min(padic_valuation(x, p) for row in entries for x in row if x != 0)
    scale = Fraction(p) ** (-shift)
    return [[x * scale for x in row] for row in entries]


def cartan_level(g: Matrix, p: int) -> int:
    """
    The level ell with g in K diag(1, p^ell) K Z, so that ||g|| = p^ell once g is
    replaced by its primitive representative.
    """
    (a, b), (c, d) = primitive_representative(g, p)
    return padic_valuation(a * d - b * c, p)
