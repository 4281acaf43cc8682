import math

import numpy as np
import pytest

from momentlab_engine.core import DivergenceError, DomainError
from momentlab_engine.numerics import QuadratureSpec
from momentlab_engine.whittaker import (
    DifferentData,
    LocalCharacter,
    finite_mellin_whittaker,
    local_l_factor,
    tate_brute_force_mellin,
)

TIGHT = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-16)
TRIVIAL = LocalCharacter(value_at_uniformizer=1.0)


def test_finite_mellin_trivial_example():
    d = DifferentData(q=2, delta=0)
    assert finite_mellin_whittaker(TRIVIAL, 2, d, 1.0, 1.0) == pytest.approx(2.0, rel=1e-14)
    assert tate_brute_force_mellin(TRIVIAL, 2, d, 1.0, 1.0, spec=TIGHT).value == pytest.approx(2.0, rel=1e-12)


def test_finite_mellin_with_different():
    d = DifferentData(q=3, delta=1)
    expected = 3**-0.5 * 3 ** (1.0) * (9 / 8) * (3 / 2) * (8 / 9)
    assert finite_mellin_whittaker(TRIVIAL, 3, d, 1.0, 1.0) == pytest.approx(expected, rel=1e-14)
    oracle = tate_brute_force_mellin(TRIVIAL, 3, d, 1.0, 1.0, spec=TIGHT)
    assert oracle.value == pytest.approx(expected, rel=1e-12)


def test_finite_mellin_matches_tate_sum(rng):
    for _ in range(20):
        q = int(rng.choice([2, 3, 5]))
        d = DifferentData(q=q, delta=int(rng.integers(0, 2)))
        chi = LocalCharacter(value_at_uniformizer=complex(np.exp(1j * rng.uniform(0, 2 * np.pi))))
        s = complex(rng.uniform(0.6, 1.0), rng.uniform(-5, 5))
        v = complex(rng.uniform(1.0, 2.0), rng.uniform(-5, 5))
        closed = finite_mellin_whittaker(chi, q, d, s, v)
        oracle = tate_brute_force_mellin(chi, q, d, s, v, spec=TIGHT)
        assert abs(oracle.value - closed) <= 1e-12 * max(1.0, abs(closed)) + oracle.tail_bound


def test_tate_sum_with_sign_character():
    chi = LocalCharacter(value_at_uniformizer=-1.0)
    d = DifferentData(q=5, delta=1)
    closed = finite_mellin_whittaker(chi, 5, d, 0.8, 1.3)
    oracle = tate_brute_force_mellin(chi, 5, d, 0.8, 1.3, spec=TIGHT)
    assert oracle.value == pytest.approx(closed, rel=1e-12)
    # chi^2 is trivial, so the denominator is the plain Euler factor at 2s
    inverse_denominator = 1 / local_l_factor(TRIVIAL, 5, 1.6)
    assert inverse_denominator == pytest.approx(1 - 5**-1.6, rel=1e-15)


def test_finite_mellin_large_v_tends_to_inverse_denominator():
    d = DifferentData(q=2, delta=0)
    value = finite_mellin_whittaker(TRIVIAL, 2, d, 0.75, 60.0)
    assert value == pytest.approx(1 - 2**-1.5, rel=1e-12)


def test_tate_sum_explicit_truncation_and_tail():
    d = DifferentData(q=2, delta=1)
    coarse = tate_brute_force_mellin(TRIVIAL, 2, d, 1.0, 1.5, truncation=5)
    fine = tate_brute_force_mellin(TRIVIAL, 2, d, 1.0, 1.5, truncation=40)
    closed = finite_mellin_whittaker(TRIVIAL, 2, d, 1.0, 1.5)
    assert coarse.terms == 7
    assert abs(coarse.value - closed) <= coarse.tail_bound
    assert abs(fine.value - closed) < 1e-9
    with pytest.raises(DomainError):
        tate_brute_force_mellin(TRIVIAL, 2, d, 1.0, 1.5, truncation=-2)


def test_tate_sum_diverges_outside_region():
    with pytest.raises(DivergenceError):
        tate_brute_force_mellin(TRIVIAL, 2, DifferentData(q=2), 1.0, 0.0)


def test_mismatched_different_rejected():
    with pytest.raises(DomainError):
        finite_mellin_whittaker(TRIVIAL, 2, DifferentData(q=3, delta=1), 1.0, 1.0)
    with pytest.raises(DomainError):
        tate_brute_force_mellin(LocalCharacter(value_at_uniformizer=0.0), 2, DifferentData(q=2), 1.0, 1.0)


def test_different_from_norm():
    assert DifferentData.from_norm(3, 1 / 9).delta == 2
    assert DifferentData(q=3, delta=2).d_norm == pytest.approx(1 / 9)
    with pytest.raises(ValueError):
        DifferentData.from_norm(3, 0.5)
    assert math.isclose(DifferentData.from_norm(5, 1.0).d_norm, 1.0)
