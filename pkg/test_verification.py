"""
Tests for the verification suites.

The cheap suites run at reduced precision; the order-law suite needs about
48 digits for its q -> 0 samples to clear the precision floor.
"""

import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from qdilog.core.exceptions import ParameterError
from qdilog.core.hpnum import with_precision
from qdilog.schemas.report import VerificationReport
from qdilog.services.verification import SUITES, run_suite


def test_suite_registry():
    assert set(SUITES) == {
        "kirillov", "lerch", "special_values", "barnes_q1", "barnes_q0",
        "coefficients", "limits", "calibration", "orders",
    }
    with pytest.raises(ParameterError):
        run_suite("nosuch", with_precision(20))


def test_kirillov_with_grid():
    ctx = with_precision(30)
    grid = [{"q": "0.5", "z": "0.25"}, {"q": "0.9", "z": "0.3+0.4i"}]
    report = run_suite("kirillov", ctx, grid)
    assert report.suite == "kirillov"
    assert report.digits == 30
    assert [case.case_id for case in report.cases] == ["kirillov-000", "kirillov-001"]
    assert report.passed


def test_kirillov_default_grid():
    report = run_suite("kirillov", with_precision(50))
    assert len(report.cases) == 25
    assert report.passed


def test_grid_validation():
    ctx = with_precision(20)
    with pytest.raises(ParameterError):
        run_suite("kirillov", ctx, [{"q": "0.5"}])
    with pytest.raises(ParameterError):
        run_suite("special_values", ctx, [{"n": "1"}])


def test_failing_case_is_reported_not_raised():
    report = run_suite("kirillov", with_precision(20), [{"q": "0.5", "z": "1.5"}])
    assert not report.passed
    assert report.cases[0].residual == "inf"
    assert "DomainError" in report.cases[0].note


def test_reports_are_deterministic():
    ctx = with_precision(25)
    grid = [{"q": "0.3", "z": "-0.6"}]
    first = run_suite("kirillov", ctx, grid).model_dump_json()
    second = run_suite("kirillov", ctx, grid).model_dump_json()
    assert first == second
    restored = VerificationReport.model_validate_json(first)
    assert restored.model_dump_json() == first


def test_lerch():
    report = run_suite("lerch", with_precision(30))
    assert report.passed
    assert any(case.case_id.startswith("lerch-even") for case in report.cases)


def test_special_values():
    report = run_suite("special_values", with_precision(30))
    assert report.passed
    assert "apostol=lambda_corrected" in report.confirmed_variant
    assert "parity=corrected" in report.confirmed_variant


def test_limits():
    report = run_suite("limits", with_precision(30))
    assert report.passed
    assert any("does not approach" in finding for finding in report.findings)


def test_calibration():
    assert run_suite("calibration", with_precision(20)).passed


def test_barnes_q1_with_grid():
    report = run_suite("barnes_q1", with_precision(20), [{"x": "1", "zparam": "2", "theta": "0.3"}])
    assert len(report.cases) == 1
    assert report.cases[0].inputs["c"] == "1.5"
    assert report.passed


def test_coefficients():
    report = run_suite("coefficients", with_precision(40))
    assert report.passed
    for label in ("q1=index_corrected", "q0=parity_corrected", "si_leading=clausen"):
        assert label in report.confirmed_variant
    assert any("x^-1" in finding for finding in report.findings)


def test_orders():
    report = run_suite("orders", with_precision(50))
    assert report.passed
    assert len(report.cases) == 8


def test_barnes_q1_default_grid():
    report = run_suite("barnes_q1", with_precision(20))
    ids = [case.case_id for case in report.cases]
    assert "shift-left-N2" in ids
    assert sum(case_id.startswith("barnes-li2-") for case_id in ids) == 3
    assert report.passed


def test_barnes_q0_default_grid():
    report = run_suite("barnes_q0", with_precision(20))
    ids = [case.case_id for case in report.cases]
    assert "shift-right-N1" in ids
    assert sum(case_id.startswith("barnes-ci2-") for case_id in ids) == 3
    assert sum(case_id.startswith("barnes-si2-") for case_id in ids) == 3
    assert report.passed


@pytest.mark.parametrize("suite, grid", [
    ("kirillov", [{"q": "0.5", "z": "0.25"}, {"q": "0.9", "z": "-0.6"}]),
    ("barnes_q1", [{"x": "1", "zparam": "2", "theta": "0.3"}]),
])
def test_doubling_the_precision_tightens_every_residual(suite, grid):
    single = run_suite(suite, with_precision(20), grid)
    double = run_suite(suite, with_precision(40), grid)
    assert single.passed and double.passed
    for low, high in zip(single.cases, double.cases):
        assert low.case_id == high.case_id
        assert float(high.residual) <= float(low.tolerance)
        assert float(high.tolerance) < float(low.tolerance)
