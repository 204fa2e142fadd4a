"""
Metrics Models - Data classes for pipeline stage metrics
"""

from dataclasses import dataclass, field
from typing import Optional, List, Dict


@dataclass
class StageMetric:
    """Metrics for a single pipeline stage (scf, diagonalize, vqd, ...)"""
    stage_id: str
    name: str
    start_time: str
    end_time: Optional[str] = None
    duration: Optional[float] = None  # seconds
    success: bool = True
    error: Optional[str] = None
    counters: Dict[str, int] = field(default_factory=dict)


@dataclass
class RunMetric:
    """Metrics for an entire CLI run"""
    run_id: str
    command: str
    start_time: str
    end_time: Optional[str] = None
    duration: Optional[float] = None  # seconds
    stages: List[StageMetric] = field(default_factory=list)
