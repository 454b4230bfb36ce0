"""Tests for logging setup and the audit/experiment loggers."""

import logging

import pytest

from src.utils.logging import (
    AuditLogger,
    ExperimentLogger,
    get_log_directory,
    set_log_level,
    setup_logging,
)


@pytest.fixture
def log_file(tmp_path):
    """Route the root logger to a temporary file, restoring it afterwards."""
    path = tmp_path / "logs" / "run.log"
    root = logging.getLogger()
    saved_handlers, saved_level = list(root.handlers), root.level
    setup_logging(level=logging.DEBUG, console_output=False, file_output=True, log_file=path)
    yield path
    for handler in root.handlers:
        handler.close()
    root.handlers[:] = saved_handlers
    root.setLevel(saved_level)


def read(path):
    for handler in logging.getLogger().handlers:
        handler.flush()
    return path.read_text(encoding="utf-8")


def test_soundness_alarm_is_an_error(log_file):
    """Test that failed findings are logged at ERROR."""
    AuditLogger("test").soundness_alarm("expander_mixing", 2.0, 1.0)
    text = read(log_file)
    assert "ERROR" in text
    assert "Soundness alarm: expander_mixing violated" in text


def test_finding_without_slack(log_file):
    """Test that findings without slack still log."""
    AuditLogger("test").finding("alpha_upper", "vacuous", None)
    assert "alpha_upper | vacuous | slack=n/a" in read(log_file)


def test_curve_point(log_file):
    """Test the experiment logger format."""
    ExperimentLogger("test").point("giant", 1.5, 0.25, 0.01)
    assert "Curve point: giant x=1.5 mean=0.25" in read(log_file)


def test_set_log_level(log_file):
    """Test that the level change reaches every handler."""
    set_log_level(logging.WARNING)
    logging.getLogger("pseudograph.test").info("hidden")
    assert all(h.level == logging.WARNING for h in logging.getLogger().handlers)
    assert "hidden" not in read(log_file)


def test_log_directory_under_home(tmp_path):
    """Test the platform log directory (HOME is isolated by conftest)."""
    directory = get_log_directory()
    assert directory.is_dir()
    assert directory.is_relative_to(tmp_path)
