"""
Observability Module - Logging, metrics and report writing

- Structured logging using structlog (JSON lines)
- Stage metrics (timings and counters) per CLI run
- Deterministic JSON reports and JSONL optimizer traces
"""

# Logging exports
from .logging import (
    setup_logging,
    mainLogger,
    get_run_dir,
    close_all_loggers,
)

# Metrics exports
from .metrics import (
    StageMetric,
    RunMetric,
    StageTracker,
    MetricsCollector,
)

# Report exports
from .report import TraceWriter, render_report, write_report, to_jsonable

__all__ = [
    # Logging
    "setup_logging",
    "mainLogger",
    "get_run_dir",
    "close_all_loggers",
    # Metrics
    "StageMetric",
    "RunMetric",
    "StageTracker",
    "MetricsCollector",
    # Reports
    "TraceWriter",
    "render_report",
    "write_report",
    "to_jsonable",
]
