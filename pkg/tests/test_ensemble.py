import pytest

from surfbench import score_guess
from surfbench.core.config import SurfBenchConfig
from surfbench.core.ensemble import (
    adjusted_metric,
    composite_scores,
    group_weights,
    plain_metric,
    score_record,
    score_sequences,
)
from surfbench.core.scheme import decode
from surfbench.exceptions import DecodeError, MetricError
from surfbench.models.scores import GroupWeights, MetricId

# Mean component scores per method/observer column with their composite means.
# Columns: C1..C5, D1..D5, G1..G3, then the C, D and G composites.
COLUMN_MEANS = {
    "textual/active": (
        (0.4538, 0.1452, 0.2110, 0.3943, 0.4637),
        (0.3520, 0.6379, 0.5558, 0.2983, 0.3029),
        (0.9746, 0.9716, 0.2111),
        (0.3481, 0.4294, 0.7191),
    ),
    "textual/passive": (
        (0.2840, 0.0412, 0.1053, 0.2351, 0.5795),
        (0.2199, 0.5024, 0.3651, 0.1806, 0.1771),
        (0.9760, 0.9844, 0.4369),
        (0.2172, 0.2890, 0.7991),
    ),
    "gcps/active": (
        (0.4423, 0.1682, 0.2423, 0.3678, 0.4959),
        (0.3600, 0.5705, 0.4798, 0.2907, 0.3175),
        (0.9335, 0.9090, 0.1384),
        (0.3450, 0.4037, 0.6603),
    ),
    "gcps/passive": (
        (0.3763, 0.1164, 0.1852, 0.3251, 0.5679),
        (0.2949, 0.5286, 0.4102, 0.2228, 0.2432),
        (0.9273, 0.9167, 0.1627),
        (0.2870, 0.3399, 0.6689),
    ),
    "assoc-list-keyboard/active": (
        (0.4010, 0.0451, 0.0714, 0.2393, 0.2979),
        (0.3555, 0.6221, 0.5303, 0.1926, 0.2176),
        (0.9824, 0.9562, 0.4223),
        (0.2918, 0.3836, 0.7869),
    ),
    "assoc-list-keyboard/passive": (
        (0.3441, 0.0061, 0.0230, 0.1982, 0.4051),
        (0.3028, 0.5435, 0.4536, 0.1457, 0.1319),
        (0.9691, 0.9649, 0.4224),
        (0.2333, 0.3155, 0.7855),
    ),
    "assoc-list-mouse/active": (
        (0.4530, 0.1145, 0.1338, 0.3192, 0.2252),
        (0.4142, 0.7814, 0.5965, 0.2846, 0.2833),
        (0.9673, 0.9189, 0.4080),
        (0.3591, 0.4720, 0.7647),
    ),
    "assoc-list-mouse/passive": (
        (0.4300, 0.0216, 0.0404, 0.2136, 0.3241),
        (0.3677, 0.5715, 0.5278, 0.1567, 0.1841),
        (0.9927, 0.9883, 0.3911),
        (0.2763, 0.3616, 0.7907),
    ),
}

CHARACTERISTICS = (MetricId.C1, MetricId.C2, MetricId.C3, MetricId.C4, MetricId.C5)
DISTANCE = (MetricId.D1, MetricId.D2, MetricId.D3, MetricId.D4, MetricId.D5)
GUESSING = (MetricId.G1, MetricId.G2, MetricId.G3)


@pytest.mark.parametrize("column", sorted(COLUMN_MEANS))
def test_composites_complement_before_mean(column):
    characteristics, distance, guessing, expected = COLUMN_MEANS[column]
    values = {
        **dict(zip(CHARACTERISTICS, characteristics)),
        **dict(zip(DISTANCE, distance)),
        **dict(zip(GUESSING, guessing)),
    }

    clusters = composite_scores(values)

    assert clusters.characteristics == pytest.approx(expected[0], abs=5e-4)
    assert clusters.distance == pytest.approx(expected[1], abs=5e-4)
    assert clusters.guessing_order == pytest.approx(expected[2], abs=5e-4)


def test_group_weights_log2(gcps, textual, assoc):
    gcps_weights = group_weights(gcps)
    textual_weights = group_weights(textual)

    assert [gcps_weights.weights[name] for name in ("figure", "color", "square")] == pytest.approx(
        [0.2697, 0.1043, 0.6260], abs=1e-4
    )
    assert [textual_weights.weights[name] for name in ("key", "modifier")] == pytest.approx(
        [0.7799, 0.2201], abs=1e-4
    )
    assert group_weights(assoc).weights == {"word": 1.0}


def test_group_weights_linear(gcps):
    weights = group_weights(gcps, "linear")

    assert weights.weights["square"] == pytest.approx(64 / 72)
    assert weights.weighting == "linear"


def test_group_weights_must_sum_to_one():
    with pytest.raises(ValueError, match="sum to 1"):
        GroupWeights(weights={"a": 0.5, "b": 0.4})


def test_unknown_weighting(gcps):
    with pytest.raises(MetricError):
        group_weights(gcps, "cubic")


def test_adjusted_same_chars_gives_partial_credit(gcps):
    o = decode(gcps, "W:N:f3")
    g = decode(gcps, "B:N:f3")

    assert adjusted_metric(MetricId.C1, o, g, gcps) == pytest.approx(0.8957, abs=1e-4)
    assert plain_metric(MetricId.C1, o, g) == 0.0


def test_adjusted_equals_plain_on_single_group(assoc):
    o = decode(assoc, "#1 #2 #3 #4")
    g = decode(assoc, "#2 #1 #3 #9")

    for metric_id in CHARACTERISTICS + DISTANCE:
        assert adjusted_metric(metric_id, o, g, assoc) == pytest.approx(plain_metric(metric_id, o, g))


def test_adjusted_identity(textual):
    o = decode(textual, "Tr0ub4dor&3")

    assert adjusted_metric(MetricId.C1, o, o, textual) == pytest.approx(1.0)


def test_guessing_metrics_are_not_adjustable(gcps):
    o = decode(gcps, "W:N:f3")

    with pytest.raises(MetricError):
        adjusted_metric(MetricId.G1, o, o, gcps)
    with pytest.raises(MetricError):
        plain_metric(MetricId.G1, o, o)


def test_score_identity(textual):
    o = decode(textual, "Ab1")

    metrics, clusters = score_sequences(o, o, textual)

    assert clusters.characteristics == pytest.approx(1.0)
    assert clusters.distance == pytest.approx(1.0)
    assert clusters.guessing_order == 0.0
    assert metrics.L1 == 0.0
    assert metrics.C5 == 0.0
    assert metrics.adjusted


def test_score_plain_when_adjustment_off(gcps):
    o = decode(gcps, "W:N:f3")
    g = decode(gcps, "B:N:f3")

    metrics, _ = score_sequences(o, g, gcps, SurfBenchConfig(adjusted=False))

    assert metrics.C1 == 0.0
    assert not metrics.adjusted


def test_single_group_scheme_reports_plain_scoring(assoc):
    o = decode(assoc, "#1 #2 #3")

    metrics, _ = score_sequences(o, decode(assoc, "#1 #4"), assoc, SurfBenchConfig(adjusted=True))

    assert not metrics.adjusted


def test_score_empty_guess(textual):
    metrics, clusters = score_sequences(decode(textual, "Tr0ub4dor&3"), decode(textual, ""), textual)

    assert metrics.L1 == 1.0
    assert metrics.C1 == 0.0
    assert metrics.C5 == pytest.approx(1.0)
    assert metrics.G1 == 1.0
    assert metrics.G2 == 1.0
    assert metrics.G3 == 1.0
    assert clusters.characteristics == pytest.approx(0.0, abs=1e-12)
    assert clusters.guessing_order == 1.0


def test_score_rejects_empty_original(assoc):
    with pytest.raises(MetricError):
        score_sequences(decode(assoc, ""), decode(assoc, "#1"), assoc)


def test_rank_variant_is_configurable(assoc):
    o = decode(assoc, "#1 #2")
    g = decode(assoc, "#2 #1")

    log_metrics, _ = score_sequences(o, g, assoc, SurfBenchConfig(rank_variant="log"))
    linear_metrics, _ = score_sequences(o, g, assoc, SurfBenchConfig(rank_variant="linear"))

    assert linear_metrics.G2 == pytest.approx(120 / 200)
    assert log_metrics.G2 > linear_metrics.G2


def test_score_record(make_record, gcps):
    record = make_record("gcps", "W:N:f3 B:Q:d8", "B:N:f3", login_time_s=12.5)

    scored = score_record(record, gcps)

    assert scored.record_id == record.record_id
    assert scored.login_time_s == 12.5
    assert scored.metrics.L1 == pytest.approx(0.5)
    assert scored.row_value("C") == scored.clusters.characteristics
    assert scored.row_value("login_time") == 12.5
    assert scored.row_value("G3") == scored.metrics.G3


def test_score_record_rejects_bad_guess(make_record, gcps):
    with pytest.raises(DecodeError):
        score_record(make_record("gcps", "W:N:f3", "W:N:z9"), gcps)


def test_score_guess_one_liner():
    scored = score_guess("gcps", original="W:N:f3", guess="B:N:f3")

    assert scored.metrics.C1 == pytest.approx(0.8957, abs=1e-4)
    assert scored.scheme_id == "gcps"


def test_metric_vector_helpers():
    scored = score_guess("assoc-list", "#1 #2 #3", "#1 #2")

    values = scored.metrics.values()
    assert set(values) == set(MetricId)
    complementary = {score.metric_id for score in scored.metrics.scores() if score.complementary}
    assert complementary == {MetricId.L1, MetricId.C5, MetricId.G1, MetricId.G2, MetricId.G3}
