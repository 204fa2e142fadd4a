"""Unified logging configuration using structlog"""

import sys
import logging
import structlog
from pathlib import Path
from typing import Optional
from .utils import path_to_slug

# State tracking
_logging_initialized = False
_run_dir: Optional[Path] = None

def _json_formatter(logger, method_name, event_dict):
    """Custom formatter that outputs clean JSON lines"""
    import json
    from datetime import datetime, timezone

    # Build JSON structure
    log_data = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "level": event_dict.pop("level", "info"),
    }

    if "logger" in event_dict:
        log_data["logger"] = event_dict.pop("logger")

    if "event" in event_dict:
        log_data["message"] = event_dict.pop("event")

    # numpy scalars and arrays are rendered through str()
    log_data.update(event_dict)

    return json.dumps(log_data, ensure_ascii=False, default=str)


# Configure standard logging backend with NullHandler (silent before setup)
stdlib_logger = logging.getLogger("hubbardq.main")
stdlib_logger.addHandler(logging.NullHandler())
stdlib_logger.propagate = False
stdlib_logger.setLevel(logging.DEBUG)

# Configure structlog once at module load time
structlog.configure(
    processors=[
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        _json_formatter,
    ],
    wrapper_class=structlog.stdlib.BoundLogger,
    context_class=dict,
    logger_factory=structlog.stdlib.LoggerFactory(),
    cache_logger_on_first_use=True,
)

# Create global logger instance (ready to use, silent before setup)
mainLogger = structlog.get_logger("hubbardq.main")


def setup_logging(
    run_id: str,
    input_path: Optional[str] = None,
    logs_dir: Optional[str] = None,
    verbose: bool = False,
) -> Optional[Path]:
    """
    Attach handlers to the main logger

    File logging goes to ``<logs_dir>/<input-slug>/<run_id>/main.log`` when a
    logs directory is configured. Verbose mode mirrors records to stderr.

    Args:
        run_id: Identifier of this run (used as directory name)
        input_path: Model or CSV file the run operates on
        logs_dir: Base logs directory, ``None`` disables file logging
        verbose: Mirror log records to stderr

    Returns:
        Run directory path, or None when file logging is disabled
    """
    global _logging_initialized, _run_dir

    if _logging_initialized:
        return _run_dir

    main_logger = logging.getLogger("hubbardq.main")
    main_logger.handlers.clear()  # Remove NullHandler

    if logs_dir:
        slug = path_to_slug(input_path) if input_path else "no-input"
        run_dir = Path(logs_dir).expanduser() / slug / run_id
        run_dir.mkdir(parents=True, exist_ok=True)
        _run_dir = run_dir
        file_handler = logging.FileHandler(run_dir / "main.log", mode='a', encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        main_logger.addHandler(file_handler)

    if verbose:
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setLevel(logging.INFO)
        main_logger.addHandler(stream_handler)

    if not main_logger.handlers:
        main_logger.addHandler(logging.NullHandler())

    _logging_initialized = True

    mainLogger.info(
        "Logging initialized",
        run_id=run_id,
        input_path=input_path,
        logs_dir=str(_run_dir) if _run_dir else None,
        verbose=verbose,
    )

    return _run_dir


def get_run_dir() -> Optional[Path]:
    """Get the current run directory path"""
    return _run_dir


def close_all_loggers():
    """Close all logger handlers and reset to the silent state"""
    global _logging_initialized, _run_dir
    logger = logging.getLogger("hubbardq.main")
    for handler in logger.handlers[:]:
        handler.close()
        logger.removeHandler(handler)
    logger.addHandler(logging.NullHandler())
    _logging_initialized = False
    _run_dir = None
