import logging
import threading
import time

import pytest

from momentlab_engine.core import (
    CheckFailure,
    ConfigException,
    DivergenceError,
    DomainError,
    NumericsException,
    PoleError,
    QuadratureError,
    configure_logging,
    load_app_config,
    ordered_map,
)
from momentlab_engine.numerics import QuadratureSpec


def test_defaults_without_yaml(tmp_path):
    config = load_app_config(str(tmp_path / "missing.yaml"))
    assert config.numerics.rel_tol == 1e-10
    assert config.execution.workers == 1
    assert config.execution.deterministic
    assert config.output.format == "csv"


def test_yaml_values_and_cache(tmp_path):
    path = tmp_path / "momentlab.yaml"
    path.write_text("numerics:\n  rel_tol: 1.0e-8\nexecution:\n  workers: 3\n")
    config = load_app_config(str(path))
    assert config.numerics.rel_tol == 1e-8
    assert config.execution.workers == 3
    assert load_app_config(str(tmp_path / "other.yaml")) is config
    assert load_app_config(str(tmp_path / "other.yaml"), force_reload=True).execution.workers == 1


def test_environment_overrides_yaml(tmp_path, monkeypatch):
    path = tmp_path / "momentlab.yaml"
    path.write_text("numerics:\n  rel_tol: 1.0e-8\n")
    monkeypatch.setenv("MOMENTLAB__NUMERICS__REL_TOL", "1e-6")
    assert load_app_config(str(path)).numerics.rel_tol == 1e-6


def test_invalid_configuration(tmp_path):
    broken = tmp_path / "broken.yaml"
    broken.write_text("numerics: [unclosed\n")
    with pytest.raises(ConfigException):
        load_app_config(str(broken), force_reload=True)
    invalid = tmp_path / "invalid.yaml"
    invalid.write_text("execution:\n  workers: 0\n")
    with pytest.raises(ConfigException):
        load_app_config(str(invalid), force_reload=True)
    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigException):
        load_app_config(str(listing), force_reload=True)


def test_quadrature_spec_from_config(tmp_path):
    path = tmp_path / "momentlab.yaml"
    path.write_text("numerics:\n  rel_tol: 1.0e-9\n  abs_tol: 0.0\n  max_subdivisions: 7\n")
    spec = QuadratureSpec.from_config(load_app_config(str(path)))
    assert spec.rel_tol == 1e-9
    assert spec.abs_tol > 0
    assert spec.max_subdivisions == 7
    assert spec.tolerance(10.0) == pytest.approx(1e-8)
    assert spec.tightened(10.0).rel_tol == pytest.approx(1e-10)


def test_ordered_map_keeps_input_order():
    def slow_square(x):
        time.sleep(0.002 * (10 - x))
        return x * x, threading.get_ident()

    serial = [value for value, _ in ordered_map(slow_square, range(10), workers=1)]
    threaded = [value for value, _ in ordered_map(slow_square, range(10), workers=4)]
    assert serial == threaded == [x * x for x in range(10)]
    assert ordered_map(abs, [], workers=4) == []


def test_exception_payloads():
    pole = PoleError("Gamma(v + 1 - s)", "argument 0")
    assert pole.factor == "Gamma(v + 1 - s)"
    assert "argument 0" in pole.message
    assert isinstance(pole, NumericsException)
    quad = QuadratureError("no convergence", partial_estimate=1 + 2j, error_estimate=0.5)
    assert quad.partial_estimate == 1 + 2j and quad.error_estimate == 0.5
    divergence = DivergenceError("diverges", partial_sum=3.0, tail_bound=float("inf"))
    assert divergence.partial_sum == 3.0
    check = CheckFailure("moments.weight_reality", measured=0.1, threshold=1e-8)
    assert check.check == "moments.weight_reality"
    assert "measured=0.1" in check.message
    assert isinstance(DomainError("x"), NumericsException)


def test_configure_logging_falls_back_without_file(tmp_path):
    configure_logging(str(tmp_path / "absent.yaml"), force=True)
    assert logging.getLogger().handlers
    configure_logging("config/logging_config.yaml", force=True)
    assert not logging.getLogger("momentlab_engine").propagate
