"""
Pydantic domain models.
"""

from surfbench.models.records import DATASET_COLUMNS, OBSERVER_TYPES, ObservationRecord
from surfbench.models.report import PairwiseGrid, ReportBundle, ReportMetadata
from surfbench.models.scores import (
    BatchResult,
    COMPLEMENTARY_METRICS,
    ClusterScores,
    GroupWeights,
    MetricId,
    MetricScore,
    MetricVector,
    ScoredRecord,
)
from surfbench.models.stats import BoxPlotSummary, DescriptiveStats, TestResult

__all__ = [
    "DATASET_COLUMNS",
    "OBSERVER_TYPES",
    "ObservationRecord",
    "COMPLEMENTARY_METRICS",
    "BatchResult",
    "ClusterScores",
    "GroupWeights",
    "MetricId",
    "MetricScore",
    "MetricVector",
    "ScoredRecord",
    "BoxPlotSummary",
    "DescriptiveStats",
    "TestResult",
    "PairwiseGrid",
    "ReportBundle",
    "ReportMetadata",
]
