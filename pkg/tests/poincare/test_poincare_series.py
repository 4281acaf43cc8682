import math

import numpy as np
import pytest

from momentlab_engine.core import DomainError, TruncationWarning
from momentlab_engine.poincare import (
    SeriesTruncation,
    UpperHalfPoint,
    eisenstein_fourier_Q,
    eval_eisenstein_Q,
    eval_poincare_Q,
    leading_term_ratio,
    partial_sum_table,
    seed_mass,
    translation_sum,
)

SMALL = SeriesTruncation(coprime_bound=40)


def _brute_translation_sum(x, y, w, bound=200_000):
    n = np.arange(-bound, bound + 1, dtype=float)
    return float(((1.0 + ((x + n) / y) ** 2) ** (-w / 2)).sum())


@pytest.mark.parametrize("x, y", [(0.3, 2.0), (0.0, 1.0), (0.7, 0.4), (0.5, 0.05)])
def test_translation_sum_matches_direct_summation(x, y):
    (ours,) = translation_sum(x, y, 3.0)
    assert ours == pytest.approx(_brute_translation_sum(x, y, 3.0), rel=1e-9)


def test_translation_sum_is_periodic():
    values = translation_sum([0.2, 1.2, -0.8], [0.6, 0.6, 0.6], 2.5)
    assert values[1] == pytest.approx(values[0], rel=1e-14)
    assert values[2] == pytest.approx(values[0], rel=1e-14)


def test_seed_mass_closed_form():
    assert seed_mass(3.0) == pytest.approx(2.0, rel=1e-12)
    assert seed_mass(2.0) == pytest.approx(math.pi, rel=1e-12)


def test_poincare_translation_invariance_is_exact():
    z = complex(0.25, 1.3)
    here = eval_poincare_Q(z, 3.0, 3.0, SMALL).value
    shifted = eval_poincare_Q(z + 1, 3.0, 3.0, SMALL).value
    assert here == shifted


def test_poincare_inversion_invariance():
    z = complex(0.3, 1.7)
    here = eval_poincare_Q(z, 3.0, 3.0, SMALL)
    inverted = eval_poincare_Q(-1 / z, 3.0, 3.0, SMALL)
    assert abs(inverted.value - here.value) < here.tail_estimate + inverted.tail_estimate


def test_poincare_inversion_on_imaginary_axis_keeps_the_coset_square():
    # no reduction modulo 1 on the imaginary axis, so both sums run over the same cosets
    here = eval_poincare_Q(complex(0, 1.7), 3.0, 3.0, SMALL).value
    inverted = eval_poincare_Q(complex(0, 1 / 1.7), 3.0, 3.0, SMALL).value
    assert inverted == pytest.approx(here, rel=1e-9)


def test_poincare_inversion_invariance_random_points(rng):
    for _ in range(10):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))
        here = eval_poincare_Q(z, 2.5, 3.0, SMALL)
        inverted = eval_poincare_Q(-1 / z, 2.5, 3.0, SMALL)
        assert abs(inverted.value - here.value) <= here.tail_estimate + inverted.tail_estimate


def test_poincare_leading_term():
    assert leading_term_ratio(10.0, 3.0, 3.0, SMALL) == pytest.approx(1.0, abs=0.02)


def test_poincare_partial_sums_increase_for_real_parameters():
    rows = partial_sum_table(complex(0.1, 0.9), 2.0, 2.0, [5, 10, 20, 40])
    values = [row.value.real for row in rows]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert rows[0].increment == 0.0
    assert all(row.tail_estimate > 0 for row in rows)


def test_partial_sum_table_agrees_with_direct_evaluation():
    z = complex(-0.2, 1.1)
    rows = partial_sum_table(z, 2.5, 2.5, [10, 40])
    direct = eval_poincare_Q(z, 2.5, 2.5, SMALL).value
    assert rows[-1].value == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize("ladder", [[], [10, 10], [20, 10], [0, 5]])
def test_partial_sum_table_rejects_bad_ladders(ladder):
    with pytest.raises(DomainError):
        partial_sum_table(complex(0, 1), 2.0, 2.0, ladder)


def test_poincare_region_checks():
    with pytest.raises(DomainError):
        eval_poincare_Q(complex(0, 1), 1.0, 3.0, SMALL)
    with pytest.raises(DomainError):
        eval_poincare_Q(complex(0, 1), 3.0, complex(3.0, 1.0), SMALL)
    with pytest.raises(DomainError):
        eval_poincare_Q(complex(0, -1), 3.0, 3.0, SMALL)


def test_poincare_outside_region_reports_infinite_tail():
    result = eval_poincare_Q(complex(0, 1), 0.5, 3.0, SeriesTruncation(coprime_bound=10), enforce_region=False)
    assert math.isinf(result.tail_estimate)


def test_poincare_complex_twist_is_allowed():
    result = eval_poincare_Q(complex(0.1, 1.2), complex(2.5, 1.0), 3.0, SMALL)
    assert math.isfinite(abs(result.value))
    assert abs(result.value.imag) > 0


def test_eisenstein_large_y():
    value = eval_eisenstein_Q(complex(0, 100), 2.0).value
    assert value.real / 100**2 == pytest.approx(1.0, abs=1e-3)


def test_eisenstein_real_on_imaginary_axis():
    value = eval_eisenstein_Q(complex(0, 2), 2.5, SMALL).value
    assert abs(value.imag) <= 1e-12 * abs(value)


def test_eisenstein_matches_fourier_expansion():
    z = complex(0.3, 0.9)
    coset = eval_eisenstein_Q(z, 3.0)
    assert coset.value == pytest.approx(eisenstein_fourier_Q(z, 3.0), rel=1e-7)


def test_eisenstein_fourier_expansion_complex_exponent():
    z = complex(0.1, 1.4)
    s = complex(3.0, 0.5)
    coset = eval_eisenstein_Q(z, s).value
    assert abs(coset - eisenstein_fourier_Q(z, s)) <= 1e-7 * abs(coset)


def test_eisenstein_truncation_stability():
    coarse = eval_eisenstein_Q(complex(0, 1), 2.0, SeriesTruncation(coprime_bound=200))
    fine = eval_eisenstein_Q(complex(0, 1), 2.0, SeriesTruncation(coprime_bound=400))
    assert abs(fine.value - coarse.value) < coarse.tail_estimate
    assert fine.value.real > coarse.value.real
    steep_coarse = eval_eisenstein_Q(complex(0, 1), 3.0, SeriesTruncation(coprime_bound=200)).value
    steep_fine = eval_eisenstein_Q(complex(0, 1), 3.0, SeriesTruncation(coprime_bound=400)).value
    assert steep_fine == pytest.approx(steep_coarse, rel=1e-6)


def test_eisenstein_region_and_truncation_warning():
    with pytest.raises(DomainError):
        eval_eisenstein_Q(complex(0, 1), 1.0)
    with pytest.warns(TruncationWarning):
        eval_eisenstein_Q(UpperHalfPoint(x=0.0, y=1.0), 1.1, SeriesTruncation(coprime_bound=5))


def test_workers_do_not_change_the_sum():
    z = complex(0.4, 0.7)
    trunc = SeriesTruncation(coprime_bound=100)
    serial = eval_poincare_Q(z, 2.5, 2.5, trunc, workers=1).value
    threaded = eval_poincare_Q(z, 2.5, 2.5, trunc, workers=4).value
    assert threaded == serial
