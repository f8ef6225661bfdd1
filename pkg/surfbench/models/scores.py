"""
Metric identifiers and per-record score models.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from surfbench.models.records import ObserverType


class MetricId(str, Enum):
    """The fourteen vulnerability metrics."""

    L1 = "L1"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"

    @property
    def label(self) -> str:
        return METRIC_LABELS[self]

    @property
    def complementary(self) -> bool:
        """Higher values mean more dissimilar guesses."""
        return self in COMPLEMENTARY_METRICS

    @property
    def cluster(self) -> Optional[str]:
        return {"C": "characteristics", "D": "distance", "G": "guessing_order"}.get(self.value[0])


METRIC_LABELS: dict[MetricId, str] = {
    MetricId.L1: "Length Dif",
    MetricId.C1: "Same Chars",
    MetricId.C2: "Correct First Chars",
    MetricId.C3: "Right Spot",
    MetricId.C4: "LCS",
    MetricId.C5: "Dif in Guess",
    MetricId.D1: "Jaccard",
    MetricId.D2: "Jaro-Winkler",
    MetricId.D3: "Cosine",
    MetricId.D4: "Levenshtein",
    MetricId.D5: "N-Grams",
    MetricId.G1: "Pool-based",
    MetricId.G2: "Position-based",
    MetricId.G3: "Entropy",
}

COMPLEMENTARY_METRICS = frozenset(
    {MetricId.L1, MetricId.C5, MetricId.G1, MetricId.G2, MetricId.G3}
)

CHARACTERISTICS = (MetricId.C1, MetricId.C2, MetricId.C3, MetricId.C4, MetricId.C5)
DISTANCE = (MetricId.D1, MetricId.D2, MetricId.D3, MetricId.D4, MetricId.D5)
GUESSING_ORDER = (MetricId.G1, MetricId.G2, MetricId.G3)

# Metrics computed per match group when scoring is adjusted.
GROUP_ADJUSTABLE = CHARACTERISTICS + DISTANCE


class MetricScore(BaseModel):
    """A single normalized metric value."""

    model_config = ConfigDict(frozen=True)

    metric_id: MetricId
    value: float = Field(ge=0.0, le=1.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def complementary(self) -> bool:
        return self.metric_id.complementary


class MetricVector(BaseModel):
    """All fourteen metric values of one record."""

    model_config = ConfigDict(frozen=True)

    L1: float = Field(ge=0.0, le=1.0)
    C1: float = Field(ge=0.0, le=1.0)
    C2: float = Field(ge=0.0, le=1.0)
    C3: float = Field(ge=0.0, le=1.0)
    C4: float = Field(ge=0.0, le=1.0)
    C5: float = Field(ge=0.0, le=1.0)
    D1: float = Field(ge=0.0, le=1.0)
    D2: float = Field(ge=0.0, le=1.0)
    D3: float = Field(ge=0.0, le=1.0)
    D4: float = Field(ge=0.0, le=1.0)
    D5: float = Field(ge=0.0, le=1.0)
    G1: float = Field(ge=0.0, le=1.0)
    G2: float = Field(ge=0.0, le=1.0)
    G3: float = Field(ge=0.0, le=1.0)
    adjusted: bool = Field(description="Characteristics and distance metrics are group-weighted")

    def get(self, metric_id: MetricId) -> float:
        return float(getattr(self, metric_id.value))

    def values(self) -> dict[MetricId, float]:
        return {metric_id: self.get(metric_id) for metric_id in MetricId}

    def scores(self) -> list[MetricScore]:
        return [MetricScore(metric_id=m, value=v) for m, v in self.values().items()]


class ClusterScores(BaseModel):
    """Composite score per metric cluster."""

    model_config = ConfigDict(frozen=True)

    characteristics: float = Field(ge=0.0, le=1.0, description="C, higher = more similar")
    distance: float = Field(ge=0.0, le=1.0, description="D, higher = more similar")
    guessing_order: float = Field(ge=0.0, le=1.0, description="G, higher = more resistant")

    def get(self, row: str) -> float:
        return {"C": self.characteristics, "D": self.distance, "G": self.guessing_order}[row]


class GroupWeights(BaseModel):
    """Per match-group weights, normalized to sum to one."""

    model_config = ConfigDict(frozen=True)

    weights: dict[str, float]
    weighting: str = "log2"

    @model_validator(mode="after")
    def _check_sum(self) -> "GroupWeights":
        total = sum(self.weights.values())
        if abs(total - 1.0) > 1e-12 or any(w < 0.0 or w > 1.0 for w in self.weights.values()):
            raise ValueError(f"group weights must lie in [0, 1] and sum to 1, got {total!r}")
        return self


class ScoredRecord(BaseModel):
    """An observation record with its metric vector and composites."""

    model_config = ConfigDict(frozen=True)

    record_id: str
    scheme_id: str
    participant_id: str
    observer_type: ObserverType
    metrics: MetricVector
    clusters: ClusterScores
    login_time_s: Optional[float] = None

    @property
    def group_key(self) -> str:
        return f"{self.scheme_id}/{self.observer_type}"

    def row_value(self, row: str) -> Optional[float]:
        """Value of a report row: a metric id, a composite letter or login_time."""
        if row in ("C", "D", "G"):
            return self.clusters.get(row)
        if row == "login_time":
            return self.login_time_s
        return self.metrics.get(MetricId(row))


class BatchResult(BaseModel):
    """Summary of a batch scoring run."""

    total_records: int
    successful: int
    failed: int
    processing_time_ms: float
    records: list[ScoredRecord] = Field(default_factory=list)
    errors: list[str] = Field(default_factory=list)
