"""
Metrics Trackers - Context managers for tracking stage execution
"""

import time
from datetime import datetime, timezone

from .models import StageMetric


class StageTracker:
    """Context manager for tracking one pipeline stage"""

    def __init__(self, metric: StageMetric):
        self.metric = metric
        self._start_time = time.time()

    def count(self, name: str, amount: int = 1):
        """Increment a named counter (function evaluations, shots, ...)"""
        self.metric.counters[name] = self.metric.counters.get(name, 0) + amount

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        end = time.time()
        self.metric.end_time = datetime.now(timezone.utc).isoformat()
        self.metric.duration = end - self._start_time

        if exc_type is not None:
            self.metric.success = False
            self.metric.error = str(exc_val)

        return False  # Don't suppress exceptions
