"""
Prometheus metrics collection for scoring runs.
"""

from typing import Any, Optional

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram


class MetricsCollector:
    """
    Prometheus metrics collector for SurfBench runs.

    Tracks:
    - Scoring volume (records by scheme and status)
    - Per-record scoring latency
    - Active scoring workers

    Each collector owns its registry so several runs in one process do not clash.
    """

    def __init__(self, registry: Optional[CollectorRegistry] = None) -> None:
        self.registry = registry or CollectorRegistry()

        self.records_scored = Counter(
            "surfbench_records_scored_total",
            "Total observation records scored",
            ["scheme", "status"],
            registry=self.registry,
        )

        self.scoring_latency = Histogram(
            "surfbench_scoring_latency_seconds",
            "Per-record scoring latency",
            buckets=[0.0005, 0.001, 0.005, 0.01, 0.05, 0.1],
            registry=self.registry,
        )

        self.active_workers = Gauge(
            "surfbench_active_workers",
            "Number of active scoring workers",
            registry=self.registry,
        )

    def record_scored(self, scheme: str, status: str, latency_seconds: float) -> None:
        """
        Record one scored record.

        Args:
            scheme: Scheme id of the record
            status: Scoring status (success, error)
            latency_seconds: Scoring latency in seconds
        """
        self.records_scored.labels(scheme=scheme, status=status).inc()
        self.scoring_latency.observe(latency_seconds)

    def update_active_workers(self, count: int) -> None:
        """Update active worker count."""
        self.active_workers.set(count)

    def get_metrics(self) -> dict[str, Any]:
        """
        Get current metrics snapshot.

        Returns:
            Dictionary with metric values
        """
        scored: dict[str, float] = {}
        for metric in self.records_scored.collect():
            for sample in metric.samples:
                if sample.name.endswith("_total"):
                    key = f"{sample.labels['scheme']}/{sample.labels['status']}"
                    scored[key] = sample.value

        latency_sum = self.registry.get_sample_value("surfbench_scoring_latency_seconds_sum")
        latency_count = self.registry.get_sample_value("surfbench_scoring_latency_seconds_count")

        return {
            "records_scored": scored,
            "records_total": sum(scored.values()),
            "scoring_seconds_total": latency_sum or 0.0,
            "scoring_observations": latency_count or 0.0,
            "active_workers": self.registry.get_sample_value("surfbench_active_workers") or 0.0,
        }
