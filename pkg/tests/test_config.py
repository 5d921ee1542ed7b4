"""Tests for settings loading."""
import pytest
from pydantic import ValidationError

from kitebilliards.config import LogLevel, OutputFormat, Settings, get_settings, reload_settings


def test_defaults(settings):
    assert settings.log_level is LogLevel.INFO
    assert settings.orbit.budget_factor == 10
    assert settings.comet.depth == 8
    assert settings.output.format is OutputFormat.JSON
    assert settings.output.decimal_places is None


def test_return_budget(settings):
    assert settings.return_budget(7) == 10 * 7 + 1000


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("KB_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("KB_COMET__DEPTH", "5")
    monkeypatch.setenv("KB_OUTPUT__FORMAT", "csv")
    loaded = reload_settings()
    assert loaded.log_level is LogLevel.DEBUG
    assert loaded.comet.depth == 5
    assert loaded.output.format is OutputFormat.CSV
    assert get_settings() is loaded


def test_invalid_values_are_rejected(monkeypatch):
    monkeypatch.setenv("KB_OUTPUT__SVG_SCALE", "0")
    with pytest.raises(ValidationError):
        Settings()


def test_artifact_path_creates_directory(settings):
    path = settings.artifact_path("graph", suffix="svg")
    assert path.name == "graph.svg"
    assert path.parent.is_dir()
