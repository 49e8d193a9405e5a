"""
Metrics Collector for rankbound
Simple counters for path tracking, monodromy loops and checkpoints
"""

import logging
import threading
from collections import Counter
from datetime import datetime
from typing import Any, Dict

logger = logging.getLogger(__name__)


class MetricsCollector:
    """Run-wide counters for numerical work"""

    _instance = None
    _initialized = False

    def __new__(cls):
        """Singleton pattern"""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        """Initialize the metrics collector (only once)"""
        if not self._initialized:
            self._lock = threading.Lock()
            self.path_status: Counter = Counter()
            self.loops = []
            self.polishes = 0
            self.checkpoints = 0
            self.start_time = datetime.now()
            MetricsCollector._initialized = True
            logger.debug("📊 Metrics Collector initialized")

    def record_path(self, status: str):
        """Record the outcome of one tracked path (thread-safe)"""
        with self._lock:
            self.path_status[status] += 1

    def record_polish(self):
        """Record a converged Newton refinement"""
        with self._lock:
            self.polishes += 1

    def record_loop(self, loop_number: int, new_points: int, failures: int, total: int):
        """Record one monodromy loop"""
        self.loops.append({
            "timestamp": datetime.now(),
            "loop": loop_number,
            "new_points": new_points,
            "failures": failures,
            "total": total,
        })
        logger.debug(f"🔁 Loop {loop_number} recorded: +{new_points} ({failures} failed)")

    def record_checkpoint(self, path: str):
        """Record a witness file write"""
        self.checkpoints += 1
        logger.debug(f"💾 Checkpoint #{self.checkpoints}: {path}")

    @property
    def paths_tracked(self) -> int:
        return sum(self.path_status.values())

    @property
    def failure_rate(self) -> float:
        """Share of tracked path segments that did not end in Success"""
        tracked = self.paths_tracked
        return 1.0 - self.path_status["Success"] / tracked if tracked else 0.0

    def get_summary(self) -> Dict[str, Any]:
        """Get metrics summary"""
        return {
            "paths_tracked": self.paths_tracked,
            "path_status": dict(self.path_status),
            "path_failure_rate": self.failure_rate,
            "loops": len(self.loops),
            "polishes": self.polishes,
            "checkpoints": self.checkpoints,
            "runtime_seconds": (datetime.now() - self.start_time).total_seconds(),
        }

    def get_display_summary(self) -> str:
        """Get formatted summary for display"""
        if not self.paths_tracked and not self.loops:
            return "No numerical operations recorded."

        runtime = (datetime.now() - self.start_time).total_seconds()
        lines = [
            "📊 Run Summary:",
            f"🛤️ Paths tracked: {self.paths_tracked} ({self.failure_rate:.1%} failed)",
            f"🔁 Monodromy loops: {len(self.loops)}",
            f"💾 Checkpoints: {self.checkpoints}",
            f"⏱️ Runtime: {runtime:.1f} seconds",
        ]

        if self.path_status:
            lines.extend(["", "Path outcomes:"])
            for status, count in sorted(self.path_status.items()):
                lines.append(f"  {status}: {count}")

        return "\n".join(lines)

    def reset(self):
        """Reset metrics (for testing)"""
        with self._lock:
            self.path_status.clear()
            self.loops.clear()
            self.polishes = 0
            self.checkpoints = 0
            self.start_time = datetime.now()
        logger.debug("🔄 Metrics reset")


# Global instance
run_metrics = MetricsCollector()
