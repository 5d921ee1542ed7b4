"""Tests for the command-line interface."""
import xml.etree.ElementTree as ET

import pytest
from typer.testing import CliRunner

from kitebilliards import cli
from kitebilliards.models import Report
from kitebilliards.output import loads

runner = CliRunner()


@pytest.fixture(autouse=True)
def _fresh_settings(settings):
    return settings


# =============================================================================
# Orbit and return
# =============================================================================


def test_orbit_json(tmp_path):
    out = tmp_path / "orbit.json"
    result = runner.invoke(cli.app, ["orbit", "--A", "1/3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    document = loads(out.read_bytes())
    assert document["closed"] is True
    assert document["hits"] == ["1/3", "5/3"]


def test_orbit_csv():
    result = runner.invoke(cli.app, ["orbit", "--A", "1/3", "--format", "csv"])
    assert result.exit_code == 0, result.output
    assert "step,x_num,x_den,y" in result.output
    assert "0,1,3,-1" in result.output


@pytest.mark.parametrize("value", ["3/2", "abc", "0"])
def test_bad_parameter_is_usage_error(value):
    result = runner.invoke(cli.app, ["orbit", "--A", value])
    assert result.exit_code == 2


def test_return_off_xi_is_usage_error():
    result = runner.invoke(cli.app, ["return", "--A", "1/3", "--x", "1", "--y", "3"])
    assert result.exit_code == 2


def test_return_reports_pinwheel_agreement(tmp_path):
    out = tmp_path / "return.json"
    result = runner.invoke(cli.app, ["return", "--A", "1/3", "--x", "1/3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    document = loads(out.read_bytes())
    assert document["agrees"] is True
    assert len(document["spectrum"]) == 8


# =============================================================================
# Graphs and chains
# =============================================================================


def test_graph_svg(tmp_path):
    out = tmp_path / "graph.svg"
    result = runner.invoke(
        cli.app, ["graph", "--A", "1/3", "--window=-4,4,-2,4", "--format", "svg", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert ET.parse(out).getroot().tag.endswith("svg")


def test_graph_rejects_bad_window():
    result = runner.invoke(cli.app, ["graph", "--A", "1/3", "--window", "1,2"])
    assert result.exit_code == 2


def test_graph_rejects_csv_format():
    result = runner.invoke(cli.app, ["graph", "--A", "1/3", "--format", "csv"])
    assert result.exit_code == 2


def test_sequence_json(tmp_path):
    out = tmp_path / "chain.json"
    result = runner.invoke(cli.app, ["sequence", "--A", "19/49", "--out", str(out)])
    assert result.exit_code == 0, result.output
    document = loads(out.read_bytes())
    assert document["ds"] == [1, 2, 1]
    assert document["lambda"][-1] == 0


def test_sequence_extend_from_one(tmp_path):
    out = tmp_path / "chain.json"
    result = runner.invoke(cli.app, ["sequence", "--A", "1", "--extend", "2,4,3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert loads(out.read_bytes())["terms"] == [[1, 1], [1, 3], [5, 13], [19, 49]]


def test_sequence_rejects_even_parameter():
    result = runner.invoke(cli.app, ["sequence", "--A", "12/31"])
    assert result.exit_code == 2


def test_pivot_without_arc():
    result = runner.invoke(cli.app, ["pivot", "--A", "19/49", "--no-arc"])
    assert result.exit_code == 0, result.output
    assert "E+ = (19, -7)" in result.output
    assert "E- = (-1, 1)" in result.output


def test_cantor_csv():
    result = runner.invoke(cli.app, ["cantor", "--A", "19/49", "--format", "csv"])
    assert result.exit_code == 0, result.output
    assert "digits,X_num,X_den,sigma,q_sigma,h1_observed,h2_observed,bounds_ok" in result.output


def test_dimension_rejects_short_chain():
    result = runner.invoke(cli.app, ["dimension", "--A", "1/3"])
    assert result.exit_code == 2


# =============================================================================
# Verify
# =============================================================================


def test_verify_discrete_prints_orbit_points():
    result = runner.invoke(cli.app, ["verify", "discrete"])
    assert result.exit_code == 0, result.output
    assert "19/49: 1/49 5/49 17/49 3/7" in result.output


def test_verify_unknown_suite():
    result = runner.invoke(cli.app, ["verify", "nonsense"])
    assert result.exit_code == 2


def test_verify_failure_exits_one(monkeypatch):
    def failing(self, names=None, params=None, strict=False):
        report = Report(name="discrete")
        report.fail(kind="order")
        return [report]

    monkeypatch.setattr(cli.VerificationRunner, "run", failing)
    result = runner.invoke(cli.app, ["verify", "discrete"])
    assert result.exit_code == 1
    assert '"kind": "order"' in result.output


def test_verify_save_writes_under_output_dir(settings, monkeypatch):
    monkeypatch.setattr(cli.VerificationRunner, "run", lambda self, names=None, params=None, strict=False: [])
    result = runner.invoke(cli.app, ["verify", "discrete", "--save"])
    assert result.exit_code == 0, result.output
    assert loads((settings.output_dir / "verify.json").read_bytes()) == []
