import math

import numpy as np
import pytest
from pydantic import ValidationError

from momentlab_engine.core import CheckFailure, DomainError
from momentlab_engine.fields import HeckeCharacter, kappa_chi
from momentlab_engine.kernels import (
    LocalCharacterParams,
    MeasureConvention,
    SpectralParams,
    k_asym_main,
)
from momentlab_engine.moments import (
    WeightSpec,
    landau_positivity_probe,
    smoothing_weight,
    smoothing_weight_table,
)

MU = SpectralParams.diagonal(0.1)


def _t_for_kappa(kappa):
    # trivial character on Q(i): kappa(t) = 1 + 4 t^2
    return math.sqrt((kappa - 1.0) / 4.0)


def _direct_weight(field, chi, t, spec):
    # plain trapezoid in Im w over the product of per-place main terms
    tau = np.linspace(-12.0, 12.0, 2401)
    values = []
    for x in tau:
        w = spec.contour_re + 1j * x
        product = 1.0 + 0j
        for index, place_type in enumerate(field.place_types):
            ell = chi.ell_values[index - field.r1] if index >= field.r1 else 0
            local = LocalCharacterParams(t_nu=chi.t_values[index], ell_nu=ell)
            product *= k_asym_main(place_type, t, 0, w, local, MU, spec.convention).value
        values.append(complex(spec.h(w)) * spec.T**w * product)
    return (np.sum(values) * (tau[1] - tau[0]) / (2 * math.pi)).real


def test_weight_spec_validation():
    spec = WeightSpec(T=10.0)
    assert complex(spec.h(1.0)) == 1.0
    assert spec.contour_re == 2.0
    with pytest.raises(ValidationError):
        WeightSpec(T=10.0, contour_re=1.0)
    with pytest.raises(ValidationError):
        WeightSpec(T=0.5)


@pytest.mark.parametrize("T, t", [(10.0, 0.0), (10.0, 3.0), (50.0, -20.0), (3.0, 40.0)])
def test_rational_weight_closed_form(field_q, T, t):
    # on Q the contour shifts to Re w = 1: x exp(-(log x)^2 / 4) / (2 sqrt(pi)), x = T / (1 + |t|)
    x = T / (1.0 + abs(t))
    expected = x * math.exp(-math.log(x) ** 2 / 4.0) / (2.0 * math.sqrt(math.pi))
    value = smoothing_weight(field_q, HeckeCharacter.trivial(field_q), MU, t, WeightSpec(T=T))
    assert value == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("field_name", ["field_qi", "field_qsqrt2"])
def test_weight_matches_product_of_main_terms(field_name, request):
    field = request.getfixturevalue(field_name)
    chi = HeckeCharacter.trivial(field)
    spec = WeightSpec(T=20.0)
    value = smoothing_weight(field, chi, MU, 0.7, spec)
    assert value == pytest.approx(_direct_weight(field, chi, 0.7, spec), rel=1e-8)


def test_integral_convention_rescales_T(field_qi):
    chi = HeckeCharacter.trivial(field_qi)
    integral = smoothing_weight(field_qi, chi, MU, 1.0, WeightSpec(T=40.0, convention=MeasureConvention.INTEGRAL))
    displayed = smoothing_weight(field_qi, chi, MU, 1.0, WeightSpec(T=10.0))
    assert integral == pytest.approx(displayed, rel=1e-10)


def test_weight_scales_with_T(field_qi):
    chi = HeckeCharacter.trivial(field_qi)
    low = smoothing_weight(field_qi, chi, MU, 0.0, WeightSpec(T=2.0))
    high = smoothing_weight(field_qi, chi, MU, 0.0, WeightSpec(T=4.0))
    assert 1.5 <= high / low <= 2.5


def test_weight_concentrates_where_kappa_is_small(field_qi):
    chi = HeckeCharacter.trivial(field_qi)
    T = 100.0
    spec = WeightSpec(T=T)
    inside = smoothing_weight(field_qi, chi, MU, _t_for_kappa(T / 10.0), spec)
    outside = smoothing_weight(field_qi, chi, MU, _t_for_kappa(10.0 * T), spec)
    assert inside > 10.0 * outside > 0.0

    at_T = smoothing_weight(field_qi, chi, MU, _t_for_kappa(T), spec)
    far = smoothing_weight(field_qi, chi, MU, _t_for_kappa(100.0 * T), spec)
    assert far < 1e-2 * at_T


def test_weight_depends_on_t_through_kappa_only(field_qi):
    shifted = HeckeCharacter(t_values=(0.0,), ell_values=(4,))
    spec = WeightSpec(T=30.0)
    # kappa = 17 + 4 t^2 for ell = 4; the trivial character reaches 17 at t = 2
    value = smoothing_weight(field_qi, shifted, MU, 0.0, spec)
    reference = smoothing_weight(field_qi, HeckeCharacter.trivial(field_qi), MU, 2.0, spec)
    assert value == pytest.approx(reference, rel=1e-10)


def test_asymmetric_spectral_parameters_fail_reality_check(field_qi):
    skewed = SpectralParams(mu1=0.1 + 0.2j, mu2=0.0)
    with pytest.raises(CheckFailure) as failure:
        smoothing_weight(field_qi, HeckeCharacter.trivial(field_qi), skewed, 0.0, WeightSpec(T=5.0))
    assert failure.value.check == "moments.weight_reality"


def test_weight_table_rows(field_qi):
    chi = HeckeCharacter.trivial(field_qi)
    spec = WeightSpec(T=25.0)
    grid = [0.0, 0.5, 2.0, 8.0]
    rows = smoothing_weight_table(field_qi, chi, MU, grid, spec, workers=1)
    threaded = smoothing_weight_table(field_qi, chi, MU, grid, spec, workers=3)
    assert [row.t for row in rows] == grid
    assert rows == threaded
    for row in rows:
        assert row.kappa == pytest.approx(float(kappa_chi(field_qi, chi, row.t)))
    assert rows[0].weight == pytest.approx(smoothing_weight(field_qi, chi, MU, 0.0, spec))


def test_positivity_probe_rejects_small_w():
    with pytest.raises(DomainError):
        landau_positivity_probe(1.0, 0.1, LocalCharacterParams())


@pytest.mark.slow
@pytest.mark.parametrize("ell", [0, 4])
def test_positivity_on_standard_grid(ell, loose_spec):
    report = landau_positivity_probe(2.0, 0.1, LocalCharacterParams(ell_nu=ell), spec=loose_spec)
    assert report.all_nonnegative
    assert [row.t for row in report.rows] == [0.0, 1.0, 5.0, 10.0]
    assert report.worst_relative == pytest.approx(1.0, abs=1e-8)
    assert report.ell == ell


@pytest.mark.slow
def test_positivity_near_the_boundary(loose_spec):
    near = landau_positivity_probe(1.1, 0.1, LocalCharacterParams(), t_grid=[0.0, 5.0], spec=loose_spec)
    far = landau_positivity_probe(2.0, 0.1, LocalCharacterParams(), t_grid=[0.0, 5.0], spec=loose_spec)
    assert near.all_nonnegative
    assert all(row.error_estimate >= 0 for row in near.rows)
    assert near.rows[0].value.real > far.rows[0].value.real
