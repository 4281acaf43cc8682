import cmath
import math
from pathlib import Path

import numpy as np
import pytest

from momentlab_engine.core import DomainError
from momentlab_engine.fields import (
    HeckeCharacter,
    character_lattice,
    character_value,
    inverse_character,
    kappa_chi,
    load_field_file,
    moment_budget,
    torsion_character_value,
    unit_character_value,
)

CBRT2_FILE = Path(__file__).resolve().parents[2] / "config" / "fields" / "q_cbrt2.yaml"
SILVER = math.log(1 + math.sqrt(2))


def _key(chi):
    return tuple(round(t, 9) for t in chi.t_values), chi.ell_values


def test_rational_field_has_only_trivial_character(field_q):
    chars = character_lattice(field_q, 100)
    assert len(chars) == 1
    assert chars[0].is_trivial


def test_gaussian_field_lattice(field_qi):
    chars = character_lattice(field_qi, 10)
    assert sorted(c.ell_values[0] for c in chars) == [-8, -4, 0, 4, 8]
    assert all(c.t_values == (0.0,) for c in chars)


def test_real_quadratic_lattice(field_qsqrt2):
    chars = character_lattice(field_qsqrt2, 8)
    t1 = sorted(c.t_values[0] for c in chars)
    expected = [math.pi * m / SILVER for m in (-2, -1, 0, 1, 2)]
    assert t1 == pytest.approx(expected, rel=1e-12, abs=1e-12)
    assert math.pi / SILVER == pytest.approx(3.5644, abs=1e-3)
    for c in chars:
        assert c.t_values[0] == -c.t_values[1]


@pytest.mark.parametrize("name, bound", [("Q_sqrt2", 30.0), ("Q_i", 20.0), ("cbrt2", 12.0)])
def test_characters_are_trivial_on_units(name, bound, field_qsqrt2, field_qi):
    field = {"Q_sqrt2": field_qsqrt2, "Q_i": field_qi}.get(name) or load_field_file(str(CBRT2_FILE))
    chars = character_lattice(field, bound)
    assert chars
    for chi in chars:
        assert abs(float(np.dot(field.local_degrees, chi.t_values))) < 1e-12 * max(1.0, bound)
        for j in range(field.unit_rank):
            assert abs(unit_character_value(field, chi, j) - 1) < 1e-10
        assert abs(torsion_character_value(field, chi) - 1) < 1e-10


def test_mixed_signature_needs_even_ell():
    field = load_field_file(str(CBRT2_FILE))
    chars = character_lattice(field, 12)
    assert {c.ell_values[0] % 2 for c in chars} == {0}
    assert any(c.ell_values[0] != 0 for c in chars)


@pytest.mark.parametrize("fixture_name", ["field_qi", "field_qsqrt2"])
def test_lattice_closed_under_inversion(fixture_name, request):
    field = request.getfixturevalue(fixture_name)
    chars = character_lattice(field, 25)
    keys = {_key(c) for c in chars}
    assert {_key(inverse_character(c)) for c in chars} == keys


def test_character_values():
    trivial = HeckeCharacter(t_values=(0.0,), ell_values=(0,))
    assert character_value(trivial, 0, 2.5 - 1j) == pytest.approx(1.0)
    chi = HeckeCharacter(t_values=(0.0,), ell_values=(4,))
    assert character_value(chi, 0, cmath.exp(1j * math.pi / 4)) == pytest.approx(-1.0, abs=1e-14)
    real_chi = HeckeCharacter(t_values=(2.0, -2.0))
    assert abs(character_value(real_chi, 1, -3.0)) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        character_value(chi, 0, 0)


def test_real_quadratic_unit_value(field_qsqrt2):
    chi = next(c for c in character_lattice(field_qsqrt2, 8) if c.label == "m=(1,)")
    eps, eps_conj = 1 + math.sqrt(2), 1 - math.sqrt(2)
    value = character_value(chi, 0, eps) * character_value(chi, 1, eps_conj)
    assert abs(value - 1) < 1e-10


def test_kappa_examples(field_q, field_qi, field_qsqrt2):
    assert kappa_chi(field_q, HeckeCharacter.trivial(field_q), 3.0) == 4.0
    assert kappa_chi(field_qi, HeckeCharacter(t_values=(0.0,), ell_values=(4,)), 1.0) == 21.0
    assert kappa_chi(field_qsqrt2, HeckeCharacter.trivial(field_qsqrt2), 2.0) == 9.0


def test_kappa_symmetry_under_inversion(field_qsqrt2, field_qi):
    for field in (field_qsqrt2, field_qi):
        for chi in character_lattice(field, 12):
            for t in (-3.3, 0.0, 1.7, 9.0):
                assert kappa_chi(field, chi, t) == pytest.approx(kappa_chi(field, inverse_character(chi), -t))
                assert kappa_chi(field, chi, t) >= 1.0


def test_budget_rational(field_q):
    budget = moment_budget(field_q, 50.0)
    assert budget.character_count == 1
    assert budget.total_measure == pytest.approx(98.0, rel=1e-12)


def test_budget_gaussian_closed_form(field_qi):
    budget = moment_budget(field_qi, 100.0)
    expected = sum(math.sqrt(99 - ell * ell) for ell in (-8, -4, 0, 4, 8))
    assert budget.character_count == 5
    assert budget.total_measure == pytest.approx(expected, rel=1e-10)


def test_budget_real_quadratic_disconnected_windows(field_qsqrt2):
    T = 20.0
    budget = moment_budget(field_qsqrt2, T, keep_details=True)
    expected = 2 * (math.sqrt(T) - 1)
    for m in (1, 2):
        a = math.pi * m / SILVER
        inner = math.sqrt(max(0.0, (1 + a) ** 2 - T))
        expected += 2 * 2 * (math.sqrt(T + a * a) - 1 - inner)
    assert budget.character_count == 5
    assert budget.total_measure == pytest.approx(expected, rel=1e-9)
    split = [b for b in budget.per_character if b.character.label == "m=(1,)"][0]
    assert len(split.intervals) == 2


def test_budget_monotone_in_T(field_qi):
    measures = [moment_budget(field_qi, T).total_measure for T in (5.0, 20.0, 80.0, 320.0)]
    assert all(b >= a for a, b in zip(measures, measures[1:]))


def test_budget_growth_exponent(field_qi):
    Ts = np.array([1e2, 1e3, 1e4])
    measures = np.array([moment_budget(field_qi, T).total_measure for T in Ts])
    slope = np.polyfit(np.log(Ts), np.log(measures), 1)[0]
    assert 0.9 <= slope <= 1.1


@pytest.mark.parametrize("T", [50.0, 1e3])
def test_budget_edges_converge_for_large_T(field_qsqrt2, T):
    budget = moment_budget(field_qsqrt2, T)
    assert budget.character_count > 0
    assert math.isfinite(budget.total_measure) and budget.total_measure > 0.0


def test_budget_rejects_small_T(field_q):
    with pytest.raises(DomainError):
        moment_budget(field_q, 1.0)
