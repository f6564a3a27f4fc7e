"""Tests for server module."""

import logging

import pytest

from quadrangle_lie.server import warm_catalogs


def test_should_warm_catalogs() -> None:
    """Test that warm_catalogs builds the quadrangle and root bases."""
    assert warm_catalogs() == {"points": 27, "lines": 45, "exterior": 36, "rootbases": 72}


def test_should_apply_configured_log_level(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that warm_catalogs sets the configured level."""
    monkeypatch.setenv("QUADRANGLE_LIE_LOG_LEVEL", "WARNING")
    warm_catalogs()

    assert logging.getLogger("quadrangle-lie").level == logging.WARNING
