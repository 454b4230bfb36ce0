"""
Logging Configuration
Centralized logging setup for the pseudograph library and CLI.
"""

import logging
import logging.handlers
import platform
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Union


def get_log_directory() -> Path:
    """Get the appropriate log directory for the current platform."""
    system = platform.system().lower()

    if system == "windows":
        log_dir = Path.home() / "AppData" / "Roaming" / "Pseudograph" / "logs"
    elif system == "darwin":  # macOS
        log_dir = Path.home() / "Library" / "Logs" / "Pseudograph"
    else:  # Linux and others
        log_dir = Path.home() / ".local" / "share" / "pseudograph" / "logs"

    log_dir.mkdir(parents=True, exist_ok=True)
    return log_dir


def setup_logging(
    level: int = logging.INFO,
    console_output: bool = True,
    file_output: bool = False,
    log_file: Optional[Union[str, Path]] = None,
) -> logging.Logger:
    """
    Setup centralized logging for pseudograph.

    Console output goes to stderr so that stdout stays reserved for
    command results (eigenvalues, JSON documents).

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        console_output: Whether to output logs to the console
        file_output: Whether to output logs to a file
        log_file: Custom log file path (optional)

    Returns:
        Configured root logger
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)-8s | %(name)-20s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    if console_output:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    if file_output:
        if log_file is None:
            timestamp = datetime.now().strftime("%Y%m%d")
            log_file = get_log_directory() / f"pseudograph_{timestamp}.log"
        else:
            log_file = Path(log_file)
            log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_file, maxBytes=10 * 1024 * 1024, backupCount=5, encoding="utf-8"  # 10MB
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    logger = logging.getLogger(__name__)
    logger.debug("=" * 60)
    logger.debug("Pseudograph Starting")
    logger.debug(f"Platform: {platform.system()} {platform.release()}")
    logger.debug(f"Python: {sys.version}")
    logger.debug(f"Log Level: {logging.getLevelName(level)}")
    if file_output:
        logger.debug(f"Log File: {log_file}")
    logger.debug("=" * 60)

    return root_logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance for a specific module."""
    return logging.getLogger(name)


def set_log_level(level: int):
    """Change the logging level for all handlers."""
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    for handler in root_logger.handlers:
        handler.setLevel(level)

    logger = get_logger(__name__)
    logger.info(f"Log level changed to: {logging.getLevelName(level)}")


def log_exception(logger: logging.Logger, message: str = "An exception occurred"):
    """Log an exception with traceback information."""
    logger.exception(message)


def log_performance_metric(
    logger: logging.Logger, metric_name: str, value: float, unit: str = "s"
):
    """Log performance metrics."""
    logger.debug(f"Performance: {metric_name} = {value:.4f}{unit}")


class AuditLogger:
    """Specialized logger for theorem audits."""

    def __init__(self, name: str = "main"):
        self.logger = get_logger(f"audit.{name}")

    def finding(self, theorem_id: str, verdict: str, slack: Optional[float]):
        """Log a single audit finding."""
        slack_text = "n/a" if slack is None else f"{slack:.6g}"
        self.logger.debug(f"Finding: {theorem_id} | {verdict} | slack={slack_text}")

    def soundness_alarm(self, theorem_id: str, lhs: float, rhs: float):
        """Log an exact value violating an audited inequality."""
        self.logger.error(
            f"Soundness alarm: {theorem_id} violated (lhs={lhs!r} > rhs={rhs!r})"
        )

    def report_summary(self, graph_name: str, counts: Dict[str, int]):
        """Log the verdict histogram of a finished report."""
        self.logger.info(f"Audit report: {graph_name} | {counts}")


class ExperimentLogger:
    """Specialized logger for Monte Carlo experiments."""

    def __init__(self, name: str = "main"):
        self.logger = get_logger(f"mc.{name}")

    def trial(self, experiment: str, x: float, trial: int, value: Any):
        """Log one trial outcome."""
        self.logger.debug(f"Trial: {experiment} x={x:.6g} #{trial} -> {value}")

    def point(self, experiment: str, x: float, mean: float, stderr: float):
        """Log an aggregated curve point."""
        self.logger.info(
            f"Curve point: {experiment} x={x:.6g} mean={mean:.6g} stderr={stderr:.3g}"
        )


# Global logger instances for convenience
audit_logger = AuditLogger()
experiment_logger = ExperimentLogger()
