import pytest

from momentlab_engine.core import DomainError
from momentlab_engine.verification import criterion_ids, run_acceptance_suite
from momentlab_engine.verification import service

FAST = ["special_functions", "kernel_symmetry", "eisenstein_pole", "whittaker_closed_forms", "character_machinery"]


def test_twelve_criteria_registered_in_order():
    ids = criterion_ids()
    assert len(ids) == 12
    assert ids[0] == "special_functions"
    assert ids[-1] == "character_machinery"
    assert set(FAST) <= set(ids)


def test_fast_criteria_pass():
    report = run_acceptance_suite(FAST, workers=1)
    assert [result.identifier for result in report.results] == FAST
    for result in report.results:
        assert result.passed, (result.identifier, result.measured, result.error)
        assert result.measured
        assert result.runtime_seconds >= 0
    assert report.passed
    assert report.failed == []


def test_selection_runs_in_registry_order():
    report = run_acceptance_suite(["eisenstein_pole", "special_functions"])
    assert [r.identifier for r in report.results] == ["special_functions", "eisenstein_pole"]
    assert report.results[1].measured["Q_error"] < 1e-6


def test_unknown_criterion_rejected():
    with pytest.raises(DomainError):
        run_acceptance_suite(["no_such_check"])


def test_library_exception_reported_as_failure(monkeypatch):
    def broken(workers):
        raise DomainError("synthetic failure")

    entry = service._REGISTRY["eisenstein_pole"]
    monkeypatch.setitem(service._REGISTRY, "eisenstein_pole", entry._replace(run=broken))
    report = run_acceptance_suite(["eisenstein_pole"])
    result = report.results[0]
    assert not result.passed
    assert result.error == "synthetic failure"
    assert report.failed == ["eisenstein_pole"]


def test_duplicate_registration_rejected():
    with pytest.raises(ValueError):
        service.criterion("special_functions", "again")(lambda workers: ({}, {}, True))


@pytest.mark.slow
def test_full_suite_passes():
    report = run_acceptance_suite(workers=4)
    assert report.failed == []
