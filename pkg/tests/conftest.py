"""Shared fixtures for the kitebilliards test suite."""
from fractions import Fraction

import pytest

from kitebilliards import config
from kitebilliards.config import Settings, reload_settings
from kitebilliards.dynamics import Kite


@pytest.fixture(autouse=True)
def _reset_settings():
    """Drop the cached settings so environment overrides never leak between tests."""
    yield
    config._settings = None


@pytest.fixture
def settings(tmp_path, monkeypatch) -> Settings:
    """Fresh settings writing artifacts under a temporary directory."""
    monkeypatch.setenv("KB_OUTPUT_DIR", str(tmp_path / "artifacts"))
    return reload_settings()


@pytest.fixture
def kite_third() -> Kite:
    return Kite(Fraction(1, 3))


@pytest.fixture
def kite_half() -> Kite:
    return Kite(Fraction(1, 2))
