"""
Report Writers - Deterministic JSON reports and JSONL optimizer traces
"""

import json
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Recursively convert dataclasses, enums and numpy values to JSON types"""
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Path):
        return str(value)
    return value


def render_report(payload: Dict[str, Any]) -> str:
    """Render a report with sorted keys so identical inputs give identical bytes"""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(payload: Dict[str, Any], path: Optional[Path] = None) -> str:
    """
    Write a JSON report to ``path`` (or only render it when path is None)

    Returns:
        The rendered text
    """
    text = render_report(payload)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


class TraceWriter:
    """
    Writes optimizer trace events to a JSONL file

    Each event is a JSON object on a separate line, enabling:
    - Streaming writes (the file is truncated on the first write)
    - Real-time monitoring (tail -f)
    - Easy parsing (line-by-line)
    """

    def __init__(self, file_path: Path):
        self.file_path = Path(file_path)
        self._file_handle: Optional[Any] = None
        self._opened = False

    def _ensure_open(self):
        if not self._opened:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
            self._file_handle = open(self.file_path, 'w', encoding='utf-8')
            self._opened = True

    def write(self, event_data: Dict[str, Any]):
        """Write a single event as one JSON line"""
        self._ensure_open()
        json_line = json.dumps(to_jsonable(event_data), ensure_ascii=False, sort_keys=True)
        self._file_handle.write(json_line + '\n')
        self._file_handle.flush()

    def close(self):
        """Close the file handle"""
        if self._opened and self._file_handle:
            self._file_handle.close()
            self._opened = False
            self._file_handle = None

    def __enter__(self):
        self._ensure_open()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
        return False
