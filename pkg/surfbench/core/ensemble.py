"""
Per-record scoring: group weighting, the metric vector and cluster composites.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Literal, Optional

from surfbench.core import similarity
from surfbench.core.config import SurfBenchConfig
from surfbench.core.guess_order import entropy_drop_score, pool_guess_score, position_guess_score
from surfbench.core.scheme import PasswordSeq, Scheme, decode, project
from surfbench.exceptions import MetricError
from surfbench.models.records import ObservationRecord
from surfbench.models.scores import (
    CHARACTERISTICS,
    DISTANCE,
    GROUP_ADJUSTABLE,
    GUESSING_ORDER,
    ClusterScores,
    GroupWeights,
    MetricId,
    MetricVector,
    ScoredRecord,
)
from surfbench.utils.logging import get_logger

logger = get_logger(__name__)

Weighting = Literal["log2", "linear"]

SIMILARITY_METRICS: dict[MetricId, similarity.SimilarityMetric] = {
    MetricId.L1: similarity.length_dif,
    MetricId.C1: similarity.same_chars,
    MetricId.C2: similarity.correct_first,
    MetricId.C3: similarity.right_spot,
    MetricId.C4: similarity.lcs_ratio,
    MetricId.C5: similarity.dif_in_guess,
    MetricId.D1: similarity.jaccard,
    MetricId.D2: similarity.jaro_winkler,
    MetricId.D3: similarity.cosine,
    MetricId.D4: similarity.levenshtein_sim,
    MetricId.D5: similarity.ngram_dice,
}


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def _metric(metric_id: MetricId, ngram_n: int) -> similarity.SimilarityMetric:
    if metric_id is MetricId.D5:
        return lambda o, g: similarity.ngram_dice(o, g, ngram_n)
    return SIMILARITY_METRICS[metric_id]


def group_weights(scheme: Scheme, weighting: Weighting = "log2") -> GroupWeights:
    """
    Normalized match-group weights.

    ``log2`` weights each group by its per-symbol information, ``linear`` by its size.
    """
    if weighting == "log2":
        raw = {group.name: math.log2(group.size) for group in scheme.match_groups}
    elif weighting == "linear":
        raw = {group.name: float(group.size) for group in scheme.match_groups}
    else:
        raise MetricError(f"Unknown weighting '{weighting}'", details={"weighting": weighting})

    total = math.fsum(raw.values())
    weights = {name: value / total for name, value in raw.items()}
    if len(weights) == 1:
        weights = {name: 1.0 for name in weights}
    return GroupWeights(weights=weights, weighting=weighting)


def plain_metric(
    metric_id: MetricId, o: PasswordSeq, g: PasswordSeq, ngram_n: int = 2
) -> float:
    """A characteristics, distance or length metric over whole symbols."""
    if metric_id not in SIMILARITY_METRICS:
        raise MetricError(
            f"{metric_id.value} is not a similarity metric", details={"metric": metric_id.value}
        )
    return _clamp(_metric(metric_id, ngram_n)(o.symbols, g.symbols))


def adjusted_metric(
    metric_id: MetricId,
    o: PasswordSeq,
    g: PasswordSeq,
    scheme: Scheme,
    weights: Optional[GroupWeights] = None,
    ngram_n: int = 2,
) -> float:
    """
    Weighted sum of a metric computed separately on every match-group projection.

    Only characteristics (C1-C5) and distance (D1-D5) metrics are adjustable.
    """
    if metric_id not in GROUP_ADJUSTABLE:
        raise MetricError(
            f"{metric_id.value} is not group-adjustable", details={"metric": metric_id.value}
        )
    weights = weights or group_weights(scheme)
    metric = _metric(metric_id, ngram_n)
    total = 0.0
    for group in scheme.match_groups:
        weight = weights.weights[group.name]
        if weight == 0.0:
            continue
        total += weight * metric(project(scheme, o, group), project(scheme, g, group))
    return _clamp(total)


def composite_scores(values: Mapping[MetricId, float]) -> ClusterScores:
    """
    Cluster means.

    Complementary members of the characteristics cluster enter as ``1 - value``;
    the guessing-order composite averages its members as they are.
    """
    characteristics = [
        1.0 - values[m] if m.complementary else values[m] for m in CHARACTERISTICS
    ]
    distance = [values[m] for m in DISTANCE]
    guessing = [values[m] for m in GUESSING_ORDER]
    return ClusterScores(
        characteristics=_clamp(math.fsum(characteristics) / len(characteristics)),
        distance=_clamp(math.fsum(distance) / len(distance)),
        guessing_order=_clamp(math.fsum(guessing) / len(guessing)),
    )


def score_sequences(
    o: PasswordSeq,
    g: PasswordSeq,
    scheme: Scheme,
    config: Optional[SurfBenchConfig] = None,
) -> tuple[MetricVector, ClusterScores]:
    """Compute the metric vector and composites of a decoded pair."""
    config = config or SurfBenchConfig()
    if o.length == 0:
        raise MetricError("Original password must not be empty", details={"scheme": scheme.id})

    adjusted = config.adjusted and len(scheme.match_groups) > 1
    weights = group_weights(scheme, config.weighting) if adjusted else None

    values: dict[MetricId, float] = {MetricId.L1: plain_metric(MetricId.L1, o, g)}
    for metric_id in GROUP_ADJUSTABLE:
        if adjusted:
            values[metric_id] = adjusted_metric(metric_id, o, g, scheme, weights, config.ngram_n)
        else:
            values[metric_id] = plain_metric(metric_id, o, g, config.ngram_n)
    values[MetricId.G1] = _clamp(pool_guess_score(o, g, scheme, config.rank_variant))
    values[MetricId.G2] = _clamp(position_guess_score(o, g, scheme, config.rank_variant))
    values[MetricId.G3] = _clamp(entropy_drop_score(o, g, scheme))

    vector = MetricVector(adjusted=adjusted, **{m.value: v for m, v in values.items()})
    return vector, composite_scores(values)


def score_record(
    record: ObservationRecord,
    scheme: Scheme,
    config: Optional[SurfBenchConfig] = None,
) -> ScoredRecord:
    """
    Score one observation record.

    Raises:
        DecodeError: Original or guess does not decode under the scheme
        MetricError: Empty original
    """
    original = decode(scheme, record.original)
    guess = decode(scheme, record.guess)
    metrics, clusters = score_sequences(original, guess, scheme, config)
    logger.debug("Scored record", record_id=record.record_id, scheme=scheme.id)
    return ScoredRecord(
        record_id=record.record_id,
        scheme_id=record.scheme_id,
        participant_id=record.participant_id,
        observer_type=record.observer_type,
        metrics=metrics,
        clusters=clusters,
        login_time_s=record.login_time_s,
    )
