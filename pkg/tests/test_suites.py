"""Tests for the verification runner."""
from fractions import Fraction as F

import pytest

from kitebilliards.exceptions import DomainError, VerificationError
from kitebilliards.models import Report
from kitebilliards.suites import DEFAULT_PARAMETERS, VerificationRunner


@pytest.fixture
def small_runner(settings):
    return VerificationRunner(
        settings,
        pinwheel_denominator=8,
        pinwheel_samples=16,
        master_radius=5,
        keycomp_max_q=40,
        penrose_pairs=12,
    )


def test_runner_names(small_runner):
    assert small_runner.names[:3] == ["embedding", "hexagrid", "pinwheel"]
    assert "dimension" in small_runner.names


def test_unknown_suite_is_rejected(small_runner):
    with pytest.raises(DomainError):
        small_runner.run(["nonsense"])


def test_discrete_suite_checks_worked_values(small_runner):
    [report] = small_runner.run(["discrete"])
    assert report.passed, report.failures
    assert set(report.details) == {"19/49", "12/31"}
    assert report.details["19/49"]["points"][:3] == ["1/49", "5/49", "17/49"]


def test_parameter_override(small_runner):
    [report] = small_runner.run(["discrete"], [F(5, 13)])
    assert list(report.details) == ["5/13"]


@pytest.mark.parametrize("name", ["identities", "cantor", "dimension", "pinwheel", "succession"])
def test_small_suites_pass(small_runner, name):
    [report] = small_runner.run([name])
    assert report.passed, report.failures[:3]
    assert report.checked > 0


def test_pivot_suite_on_worked_parameters(small_runner):
    [report] = small_runner.run(["pivot"], [F(19, 49), F(379, 645)])
    assert report.passed, report.failures[:3]


def test_masterpicture_suite_small_window(small_runner):
    [report] = small_runner.run(["masterpicture"], [F(1, 3), F(3, 5)])
    assert report.passed, report.failures[:3]


def test_strict_mode_raises_on_failure(small_runner, monkeypatch):
    def failing(params=None):
        report = Report(name="discrete")
        report.fail(kind="order")
        return report

    monkeypatch.setitem(small_runner.suites, "discrete", failing)
    with pytest.raises(VerificationError) as info:
        small_runner.run(["discrete"], strict=True)
    assert info.value.report.name == "discrete"
    assert not small_runner.run(["discrete"])[0].passed


def test_default_parameters_cover_worked_examples():
    assert F(19, 49) in DEFAULT_PARAMETERS["discrete"]
    assert F(379, 645) in DEFAULT_PARAMETERS["pivot"]


def test_succession_suite_samples_outside_inner_box(small_runner):
    [report] = small_runner.run(["succession"], [F(1, 3)])
    assert report.passed, report.failures[:3]
    assert list(report.details) == ["1/3"]
    assert report.checked > 1000
