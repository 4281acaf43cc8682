import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from pydantic import ValidationError

from momentlab_engine.core import DivergenceError, DomainError
from momentlab_engine.padic_norms import (
    LocalNormParams,
    archimedean_dominating_integral,
    brute_force_cell_count,
    cartan_level,
    cell_index,
    global_norm_product_check,
    local_norm_integral,
    primes_up_to,
)


def _hermite_cell_count(p, ell):
    # primitive integral matrices [[p^a, b], [0, p^(ell - a)]], b mod p^(ell - a), are one per coset
    count = 0
    for a in range(ell + 1):
        for b in range(p ** (ell - a)):
            g = [[p**a, b], [0, p ** (ell - a)]]
            if math.gcd(math.gcd(p**a, b), p ** (ell - a)) % p != 0:
                assert cartan_level(g, p) == ell
                count += 1
    return count


def test_cell_index_examples():
    assert cell_index(7, 0) == 1
    assert cell_index(3, 2) == 12
    assert cell_index(2, 1) == 3
    assert cell_index(2, 1) <= 2**2
    with pytest.raises(DomainError):
        cell_index(2, -1)


@pytest.mark.parametrize("p, ell, expected", [(2, 1, 3), (3, 1, 4), (2, 3, 12)])
def test_brute_force_examples(p, ell, expected):
    assert brute_force_cell_count(p, ell) == expected


@pytest.mark.parametrize(
    "p, ell",
    [(p, ell) for p in (2, 3) for ell in (1, 2, 3)]
    + [(5, 1), (5, 2), pytest.param(5, 3, marks=pytest.mark.slow)],
)
def test_cell_index_matches_enumeration(p, ell):
    assert brute_force_cell_count(p, ell) == cell_index(p, ell)
    assert _hermite_cell_count(p, ell) == cell_index(p, ell)


def test_cell_index_below_coarse_bound():
    for q in (2, 3, 5, 7):
        for ell in range(1, 6):
            assert cell_index(q, ell) <= q**2 * q ** (ell - 1)


def test_brute_force_range():
    with pytest.raises(DomainError):
        brute_force_cell_count(7, 1)
    with pytest.raises(DomainError):
        brute_force_cell_count(2, 4)


def test_local_norm_integral_examples():
    result = local_norm_integral(LocalNormParams(q=2, sigma=3.0))
    assert result.exact == pytest.approx(1.5, rel=1e-15)
    assert result.upper_bound == pytest.approx(2.0, rel=1e-15)
    assert result.tail_bound <= 1e-15
    assert abs(result.direct_sum - result.exact) <= 1e-15 + 4 * np.finfo(float).eps

    other = local_norm_integral(LocalNormParams(q=3, sigma=2.0))
    assert other.exact == pytest.approx(5 / 3, rel=1e-15)
    assert other.upper_bound == pytest.approx(3.0, rel=1e-15)


def test_local_norm_integral_below_bound_on_grid():
    for q in (2, 3, 5, 7):
        for sigma in (1.5, 2.0, 3.0, 5.0):
            result = local_norm_integral(LocalNormParams(q=q, sigma=sigma))
            assert result.exact <= result.upper_bound
            assert result.direct_sum == pytest.approx(result.exact, rel=1e-13)


def test_local_norm_integral_decreases_to_one():
    values = [local_norm_integral(LocalNormParams(q=3, sigma=sigma)).exact for sigma in (1.5, 2, 3, 5, 10, 60)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(1.0, abs=1e-25)


def test_local_norm_integral_diverges():
    with pytest.raises(DivergenceError):
        local_norm_integral(LocalNormParams(q=2, sigma=1.0))


def test_local_norm_params_prime_only():
    with pytest.raises(ValidationError):
        LocalNormParams(q=4, sigma=2.0)


def test_primes_up_to():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1).size == 0


def test_global_product_matches_zeta_form():
    result = global_norm_product_check(3.0, 3.0, 100_000)
    expected = float(mpmath.zeta(3) ** 2 / mpmath.zeta(6))
    assert result.zeta_form == pytest.approx(expected, rel=1e-10)
    assert result.gap < 1e-6
    assert result.primes == 9592


def test_global_product_gap_decreases_with_bound():
    coarse = global_norm_product_check(2.5, 3.0, 100)
    fine = global_norm_product_check(2.5, 3.0, 200)
    assert fine.gap < coarse.gap
    assert fine.product < fine.zeta_form


def test_global_product_equal_exponents_telescopes():
    result = global_norm_product_check(2.0, 2.0, 50)
    primes = primes_up_to(50)
    expected = math.prod((1 + p**-2.0) / (1 - p**-2.0) for p in primes.tolist())
    assert result.product == pytest.approx(expected, rel=1e-13)


def test_global_product_domain():
    with pytest.raises(DomainError):
        global_norm_product_check(1.0, 3.0, 10)


def test_archimedean_dominating_integral(quad_spec):
    result = archimedean_dominating_integral(1.0, 4.0, quad_spec)
    assert result.closed_form == pytest.approx(1.5, rel=1e-15)
    assert abs(result.quadrature - result.closed_form) < 1e-10
    with pytest.raises(DivergenceError):
        archimedean_dominating_integral(1.0, 2.0)


@pytest.mark.parametrize("d, sigma", [(1.0, 3.7), (3.0, 4.5), (0.5, 6.25)])
def test_dominating_quadrature_follows_the_profile(quad_spec, d, sigma):
    result = archimedean_dominating_integral(d, sigma, quad_spec)
    expected = 2.0 * (1.0 / (sigma - d - 1.0) + 1.0 / (sigma - d + 1.0))
    assert result.closed_form == pytest.approx(expected, rel=1e-15)
    assert result.quadrature == pytest.approx(expected, rel=1e-9)


def test_cartan_level_ignores_the_centre():
    assert cartan_level([[Fraction(1, 3), 0], [0, 3]], 3) == 2
    assert cartan_level([[6, 0], [0, 6 * 9]], 3) == 2
