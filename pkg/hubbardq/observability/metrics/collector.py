"""
Metrics Collector - Collects stage timings for a CLI run
"""

import time
import uuid
from contextlib import contextmanager
from dataclasses import asdict
from datetime import datetime, timezone
from typing import Any, Dict

from .models import RunMetric, StageMetric
from .trackers import StageTracker


class MetricsCollector:
    """
    Collects metrics for one CLI run

    Hierarchy:
        Run
        └── Stage (load, scf, diagonalize, vqd, sampling, fit, ...)

    Metrics carry wall-clock data and are therefore logged, never written into
    the deterministic JSON reports.
    """

    def __init__(self, run_id: str, command: str):
        self.run_metric = RunMetric(
            run_id=run_id,
            command=command,
            start_time=datetime.now(timezone.utc).isoformat(),
        )
        self._run_start_time = time.time()

    @contextmanager
    def track_stage(self, name: str):
        """
        Track a pipeline stage

        Args:
            name: Stage name

        Yields:
            StageTracker for this stage
        """
        metric = StageMetric(
            stage_id=str(uuid.uuid4()),
            name=name,
            start_time=datetime.now(timezone.utc).isoformat(),
        )
        self.run_metric.stages.append(metric)

        with StageTracker(metric) as tracker:
            yield tracker

    def end_run(self):
        """Mark run as ended"""
        self.run_metric.end_time = datetime.now(timezone.utc).isoformat()
        self.run_metric.duration = time.time() - self._run_start_time

    def generate_summary(self) -> Dict[str, Any]:
        """
        Aggregate stage metrics

        Returns:
            Dictionary with per-stage durations and counters
        """
        if self.run_metric.end_time is None:
            self.end_run()

        stages = self.run_metric.stages
        failed = [s.name for s in stages if not s.success]

        counters: Dict[str, int] = {}
        for stage in stages:
            for key, value in stage.counters.items():
                counters[key] = counters.get(key, 0) + value

        return {
            "run_id": self.run_metric.run_id,
            "command": self.run_metric.command,
            "duration": self.run_metric.duration,
            "stages": {
                "total": len(stages),
                "failed": failed,
                "durations": {s.name: round(s.duration or 0.0, 4) for s in stages},
            },
            "counters": counters,
        }

    def get_raw_metrics(self) -> Dict[str, Any]:
        """Complete metrics data as nested dictionaries"""
        return asdict(self.run_metric)
