import json
import math
from pathlib import Path

import pytest

from momentlab_engine.core import FieldDataException
from momentlab_engine.fields import (
    PlaceType,
    builtin_field,
    load_field_file,
    pole_order,
    resolve_field,
)

CBRT2_FILE = Path(__file__).resolve().parents[2] / "config" / "fields" / "q_cbrt2.yaml"


def test_rational_field(field_q):
    assert (field_q.r1, field_q.r2, field_q.abs_discriminant) == (1, 0, 1)
    assert field_q.zeta_residue == 1.0
    assert pole_order(field_q) == 2


def test_gaussian_field(field_qi):
    assert field_qi.roots_of_unity == 4
    assert field_qi.zeta_residue == pytest.approx(0.78539816, abs=1e-8)
    assert field_qi.place_types == (PlaceType.COMPLEX,)
    assert pole_order(field_qi) == 2


def test_real_quadratic_field(field_qsqrt2):
    assert field_qsqrt2.zeta_residue == pytest.approx(0.62322524, abs=1e-8)
    assert field_qsqrt2.regulator == pytest.approx(math.log(1 + math.sqrt(2)), rel=1e-14)
    assert pole_order(field_qsqrt2) == 3


def test_unknown_builtin():
    with pytest.raises(FieldDataException):
        builtin_field("Q_sqrt3")


def test_load_cubic_field_file():
    field = load_field_file(str(CBRT2_FILE))
    assert field.name == "Q_cbrt2"
    assert field.degree == 3
    assert field.unit_rank == 1
    assert field.place_types == (PlaceType.REAL, PlaceType.COMPLEX)
    assert resolve_field(str(CBRT2_FILE)) == field
    assert resolve_field("Q") is builtin_field("Q")


def test_json_field_file(tmp_path):
    path = tmp_path / "q_sqrt5.json"
    lam = math.log((1 + math.sqrt(5)) / 2)
    path.write_text(json.dumps({
        "r1": 2, "r2": 0, "abs_discriminant": 5,
        "unit_logs": [[lam, -lam]], "roots_of_unity": 2,
        "zeta_residue": 2 * lam / (2 * math.sqrt(5)) * 2,
    }))
    field = load_field_file(str(path))
    assert field.name == "q_sqrt5"
    assert field.regulator == pytest.approx(lam)


@pytest.mark.parametrize(
    "content, fragment",
    [
        ("r1: 2\nr2: 0\nabs_discriminant: 8\nunit_logs: []\nzeta_residue: 1.0\n", "Dirichlet rank"),
        ("r1: 2\nr2: 0\nabs_discriminant: 8\nunit_logs: [[0.88, 0.5]]\nzeta_residue: 1.0\n", "product formula"),
        ("r1: 1\nr2: 0\nabs_discriminant: 1\nzeta_residue: -1.0\n", "zeta_residue"),
        ("r1: 0\nr2: 1\nabs_discriminant: 3\nroots_of_unity: 3\nzeta_residue: 0.6\n", "even"),
        ("- just\n- a list\n", "mapping"),
    ],
)
def test_invalid_field_files(tmp_path, content, fragment):
    path = tmp_path / "bad.yaml"
    path.write_text(content)
    with pytest.raises(FieldDataException) as info:
        load_field_file(str(path))
    assert fragment in info.value.message


def test_missing_and_unsupported_files(tmp_path):
    with pytest.raises(FieldDataException):
        load_field_file(str(tmp_path / "absent.yaml"))
    other = tmp_path / "field.toml"
    other.write_text("r1 = 1")
    with pytest.raises(FieldDataException):
        load_field_file(str(other))
