"""
Metrics Module - Stage timing and counters for CLI runs
"""

from .models import StageMetric, RunMetric
from .trackers import StageTracker
from .collector import MetricsCollector

__all__ = [
    # Models
    "StageMetric",
    "RunMetric",
    # Trackers
    "StageTracker",
    # Collector
    "MetricsCollector",
]
