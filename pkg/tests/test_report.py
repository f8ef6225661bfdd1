import orjson
import pandas as pd
import pytest

from surfbench.analysis.report import (
    REPORT_ROWS,
    _p_cell,
    build_report,
    build_report_from_scores,
    render,
    round_half_up,
)
from surfbench.exceptions import ReportError
from surfbench.models.stats import TestResult
from surfbench.processing.demo import demo_records


@pytest.fixture(scope="module")
def demo_bundle():
    from surfbench.core.config import SurfBenchConfig
    from surfbench.core.scheme import load_schemes

    return build_report(demo_records(), load_schemes(), SurfBenchConfig(include_timestamp=False))


def _observer_records(make_record, active_guess, passive_guess, n=5):
    original = "Tr0ub4dor&3"
    return [make_record("textual", original, active_guess) for _ in range(n)] + [
        make_record("textual", original, passive_guess, observer_type="passive") for _ in range(n)
    ]


def test_identical_observer_groups_are_not_significant(make_record, schemes, config):
    records = _observer_records(make_record, "troubador", "troubador")

    bundle = build_report(records, schemes, config)

    grid = bundle.pairwise_observers
    assert grid.m == 1
    assert grid.columns == ["textual"]
    for row in REPORT_ROWS:
        result = grid.cells[row]["textual"]
        if row == "login_time":
            assert result is None
        else:
            assert result.p_adjusted == pytest.approx(1.0)
    assert bundle.significant_pairs() == 0


def test_observer_groups_are_discriminated(make_record, schemes, config):
    # "xyz" shares no key with the original
    records = _observer_records(make_record, "Tr0ub4dor&3", "xyz", n=30)

    bundle = build_report(records, schemes, config)

    assert bundle.table1["C"]["textual/active"].n == 30
    assert bundle.table1["C"]["textual/active"].mean == pytest.approx(1.0)
    assert bundle.table1["C"]["textual/passive"].mean < 0.1
    result = bundle.pairwise_observers.cells["C"]["textual"]
    assert result.p_adjusted < 0.01
    assert result.effect_label == "large"
    assert result.significant()


def test_empty_guesses_are_discriminated(make_record, schemes, config):
    bundle = build_report(_observer_records(make_record, "Tr0ub4dor&3", ""), schemes, config)

    assert bundle.table1["C"]["textual/passive"].mean == pytest.approx(0.0, abs=1e-12)
    assert bundle.table1["L1"]["textual/passive"].mean == 1.0
    assert bundle.pairwise_observers.cells["C"]["textual"].significant()


def test_single_method_report_notices(make_record, schemes, config):
    bundle = build_report(_observer_records(make_record, "troubador", ""), schemes, config)

    assert bundle.pairwise_methods == {}
    assert "login_time: no login times in dataset" in bundle.notices
    assert any(notice.startswith("pairwise_methods[all] omitted") for notice in bundle.notices)
    assert bundle.table1["login_time"]["textual/active"] is None
    assert bundle.boxplots["login_time"] == []
    assert bundle.metadata.families == {"observers": 1}


def test_observers_omitted_without_both_types(make_record, schemes, config):
    records = [make_record("textual", "abc", "abc"), make_record("gcps", "W:N:f3", "W:N:f3")]

    bundle = build_report(records, schemes, config)

    assert bundle.pairwise_observers is None
    assert "pairwise_methods[all] omnibus omitted: fewer than 3 method groups" in bundle.notices
    assert bundle.pairwise_methods["all"].omnibus["C"] is None


def test_empty_input():
    from surfbench.core.config import SurfBenchConfig

    with pytest.raises(ReportError, match="no records"):
        build_report_from_scores([], SurfBenchConfig())
    with pytest.raises(ReportError, match="no records"):
        build_report([], {})


def test_demo_report_shape(demo_bundle):
    assert demo_bundle.rows == list(REPORT_ROWS)
    assert len(demo_bundle.rows) == 18
    assert demo_bundle.columns == [
        "assoc-list-keyboard/active",
        "assoc-list-keyboard/passive",
        "assoc-list-mouse/active",
        "assoc-list-mouse/passive",
        "gcps/active",
        "gcps/passive",
        "textual/active",
        "textual/passive",
    ]
    assert demo_bundle.metadata.families == {
        "methods:all": 6,
        "methods:active": 6,
        "methods:passive": 6,
        "observers": 4,
    }
    assert demo_bundle.metadata.record_count == 274
    assert demo_bundle.metadata.generated_at is None
    assert demo_bundle.notices == []
    assert set(demo_bundle.boxplots) == {"login_time", "C", "D", "G"}
    assert all(len(summaries) == 8 for summaries in demo_bundle.boxplots.values())


def test_demo_report_cells(demo_bundle):
    grid = demo_bundle.pairwise_methods["all"]

    assert grid.columns[0] == "assoc-list-keyboard vs assoc-list-mouse"
    for row in REPORT_ROWS:
        assert grid.omnibus[row].df == 3
        for result in grid.cells[row].values():
            assert result.m == 6
            assert result.p_adjusted == pytest.approx(min(1.0, 6 * result.p_raw))
    for row in ("C", "D", "G"):
        for column in demo_bundle.columns:
            stats = demo_bundle.table1[row][column]
            assert 0.0 <= stats.mean <= 1.0


def test_report_is_deterministic(demo_bundle, schemes, config):
    again = build_report(demo_records(), schemes, config)

    assert again.model_dump() == demo_bundle.model_dump()


def test_render_markdown(demo_bundle, tmp_path):
    written = render(demo_bundle, "markdown", tmp_path / "out")

    assert [path.name for path in written] == [
        "table1.md",
        "pairwise_methods.md",
        "pairwise_observers.md",
        "boxplots.json",
        "metadata.json",
    ]
    table1 = written[0].read_text(encoding="utf-8")
    assert table1.startswith("# Metrics: mean (SD)")
    assert "| Metric | assoc-list-keyboard/active |" in table1
    assert "Characteristics" in table1
    assert "Guessing Order*" in table1
    methods = written[1].read_text(encoding="utf-8")
    assert "## all (m = 6)" in methods
    assert "Kruskal-Wallis p" in methods
    metadata = orjson.loads(written[4].read_bytes())
    assert metadata["record_count"] == 274
    assert metadata["notices"] == []
    assert metadata["families"]["observers"] == 4


def test_render_csv(demo_bundle, tmp_path):
    written = render(demo_bundle, "csv", tmp_path)

    table1 = pd.read_csv(written[0])
    assert len(table1) == 18 * 8
    assert list(table1.columns) == ["row", "group", "n", "mean", "sd", "median", "q1", "q3"]
    methods = pd.read_csv(written[1])
    assert set(methods["family"]) == {"all", "active", "passive"}
    assert len(methods) == 3 * 18 * 6
    observers = pd.read_csv(written[2])
    assert len(observers) == 18 * 4


def test_render_json(demo_bundle, tmp_path):
    (path,) = render(demo_bundle, "json", tmp_path)

    payload = orjson.loads(path.read_bytes())
    assert path.name == "report.json"
    assert payload["metadata"]["rank_variant"] == "log"
    assert set(payload["pairwise_methods"]) == {"all", "active", "passive"}


def test_render_rejects_unknown_format(demo_bundle, tmp_path):
    with pytest.raises(ReportError) as exc_info:
        render(demo_bundle, "xlsx", tmp_path)

    assert exc_info.value.details["format"] == "xlsx"


@pytest.mark.parametrize(
    ("value", "expected"),
    [(0.34815, "0.3482"), (1.0, "1.0000"), (0.00005, "0.0001"), (0.12344, "0.1234"), (0.0, "0.0000")],
)
def test_round_half_up(value, expected):
    assert round_half_up(value) == expected


def test_p_cell():
    result = TestResult(test="mann_whitney", statistic=0.0, p_raw=0.01, p_adjusted=0.01, method="exact", n=6)

    assert _p_cell(result, 0.05) == "0.0100*"
    assert _p_cell(result, 0.01) == "0.0100"
    assert _p_cell(None, 0.05) == "n/a"
