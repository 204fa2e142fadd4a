"""
Logging Module - Unified logging using structlog

Provides mainLogger for structured run logs. The logger is silent until
setup_logging() attaches a file and/or stderr handler.

Usage:
    from hubbardq.observability.logging import setup_logging, mainLogger

    setup_logging(run_id="spectrum-ethylene", logs_dir="~/.hubbardq/logs")

    mainLogger.info("scf converged", iterations=12, energy_ev=-41.3)

    stage_logger = mainLogger.bind(stage="vqd")
    stage_logger.info("restart finished", restart=2, cost=-40.1)
"""

from .setup import (
    setup_logging,
    mainLogger,
    get_run_dir,
    close_all_loggers,
)

__all__ = [
    "setup_logging",
    "mainLogger",
    "get_run_dir",
    "close_all_loggers",
]
