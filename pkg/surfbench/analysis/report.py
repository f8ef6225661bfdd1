"""
Report building and rendering.

A report has four parts:
- table1: mean and SD of every metric, composite and login time per
  scheme/observer group
- pairwise_methods: Kruskal-Wallis across methods plus Bonferroni-adjusted
  Mann-Whitney tests for every method pair. Families are all observers
  together, active only and passive only.
- pairwise_observers: active vs passive per method
- boxplots: five-number summaries of login times and composites
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from datetime import datetime, timezone
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Any, Literal, Optional, Union

import orjson
import pandas as pd

from surfbench.analysis.statistics import box_plot, describe, kruskal_wallis, mann_whitney
from surfbench.core.config import SurfBenchConfig
from surfbench.core.guess_order import RANK_MODEL_LABEL
from surfbench.core.scheme import Scheme
from surfbench.exceptions import ReportError, StatisticsError
from surfbench.models.records import OBSERVER_TYPES, ObservationRecord
from surfbench.models.report import PairwiseGrid, ReportBundle, ReportMetadata
from surfbench.models.scores import MetricId, ScoredRecord
from surfbench.models.stats import DescriptiveStats, TestResult
from surfbench.processing.batch import score_records
from surfbench.processing.dataset import RecordGroup, group_records
from surfbench.utils.logging import get_logger
from surfbench.utils.metrics import MetricsCollector

logger = get_logger(__name__)

ReportFormat = Literal["markdown", "csv", "json"]

LOGIN_TIME = "login_time"
COMPOSITES = ("C", "D", "G")

# L1, C1..C5, C, D1..D5, D, G1..G3, G, login_time
REPORT_ROWS: tuple[str, ...] = (
    MetricId.L1.value,
    *(m.value for m in (MetricId.C1, MetricId.C2, MetricId.C3, MetricId.C4, MetricId.C5)),
    "C",
    *(m.value for m in (MetricId.D1, MetricId.D2, MetricId.D3, MetricId.D4, MetricId.D5)),
    "D",
    *(m.value for m in (MetricId.G1, MetricId.G2, MetricId.G3)),
    "G",
    LOGIN_TIME,
)

ROW_LABELS: dict[str, str] = {
    **{m.value: m.label + ("*" if m.complementary else "") for m in MetricId},
    "C": "Characteristics",
    "D": "Distance",
    "G": "Guessing Order*",
    LOGIN_TIME: "Login time (s)",
}

BOXPLOT_SERIES: tuple[str, ...] = (LOGIN_TIME, *COMPOSITES)

REPORT_FILES = {
    "markdown": ("table1.md", "pairwise_methods.md", "pairwise_observers.md", "boxplots.json", "metadata.json"),
    "csv": ("table1.csv", "pairwise_methods.csv", "pairwise_observers.csv", "boxplots.json", "metadata.json"),
    "json": ("report.json",),
}


def _values(records: Sequence[ScoredRecord], row: str) -> list[float]:
    values = (record.row_value(row) for record in records)
    return [value for value in values if value is not None]


def _describe_or_none(values: Sequence[float]) -> Optional[DescriptiveStats]:
    return describe(values) if values else None


def _mwu_or_none(
    a: Sequence[float], b: Sequence[float], m: int, labels: Sequence[str]
) -> Optional[TestResult]:
    if not a or not b:
        return None
    return mann_whitney(a, b, m=m, labels=labels)


def _kw_or_none(groups: Sequence[Sequence[float]], labels: Sequence[str]) -> Optional[TestResult]:
    if len(groups) < 3 or any(len(group) < 2 for group in groups):
        return None
    return kruskal_wallis(groups, labels=labels)


def _method_family(
    family: str,
    groups: list[RecordGroup[ScoredRecord]],
    notices: list[str],
) -> Optional[PairwiseGrid]:
    """Omnibus and pairwise tests across methods for one observer family."""
    if len(groups) < 2:
        notices.append(
            f"pairwise_methods[{family}] omitted: {len(groups)} method group(s), need at least 2"
        )
        return None

    pairs = list(itertools.combinations(range(len(groups)), 2))
    m = len(pairs)
    columns = [f"{groups[i].scheme_id} vs {groups[j].scheme_id}" for i, j in pairs]
    grid = PairwiseGrid(family=family, m=m, columns=columns)
    if len(groups) < 3:
        notices.append(f"pairwise_methods[{family}] omnibus omitted: fewer than 3 method groups")

    for row in REPORT_ROWS:
        samples = [_values(group.records, row) for group in groups]
        grid.omnibus[row] = _kw_or_none(samples, [group.scheme_id for group in groups])
        grid.cells[row] = {
            column: _mwu_or_none(samples[i], samples[j], m, [groups[i].key, groups[j].key])
            for column, (i, j) in zip(columns, pairs)
        }
    return grid


def _observer_family(
    by_scheme: list[RecordGroup[ScoredRecord]], notices: list[str]
) -> Optional[PairwiseGrid]:
    comparable = [
        group
        for group in by_scheme
        if {record.observer_type for record in group.records} == set(OBSERVER_TYPES)
    ]
    if not comparable:
        notices.append("pairwise_observers omitted: no method has both active and passive records")
        return None

    m = len(comparable)
    columns = [group.scheme_id for group in comparable]
    grid = PairwiseGrid(family="observers", m=m, columns=columns)
    for row in REPORT_ROWS:
        grid.cells[row] = {}
        for group in comparable:
            active = [r for r in group.records if r.observer_type == "active"]
            passive = [r for r in group.records if r.observer_type == "passive"]
            grid.cells[row][group.scheme_id] = _mwu_or_none(
                _values(active, row),
                _values(passive, row),
                m,
                [f"{group.scheme_id}/active", f"{group.scheme_id}/passive"],
            )
    return grid


def build_report_from_scores(
    scored: Sequence[ScoredRecord],
    config: SurfBenchConfig,
    dataset: Optional[str] = None,
) -> ReportBundle:
    """
    Aggregate scored records into a report bundle.

    Raises:
        ReportError: No records
    """
    if not scored:
        raise ReportError("no records")

    notices: list[str] = []
    cells = group_records(scored, "scheme_observer")
    columns = [group.key for group in cells]

    table1: dict[str, dict[str, Optional[DescriptiveStats]]] = {
        row: {group.key: _describe_or_none(_values(group.records, row)) for group in cells}
        for row in REPORT_ROWS
    }
    if all(table1[LOGIN_TIME][column] is None for column in columns):
        notices.append("login_time: no login times in dataset")

    by_scheme = group_records(scored, "scheme")
    try:
        pairwise_methods: dict[str, PairwiseGrid] = {}
        families: dict[str, int] = {}
        family_groups = {
            "all": by_scheme,
            **{
                observer: group_records(
                    [record for record in scored if record.observer_type == observer], "scheme"
                )
                for observer in OBSERVER_TYPES
            },
        }
        for family, groups in family_groups.items():
            grid = _method_family(family, groups, notices)
            if grid is not None:
                pairwise_methods[family] = grid
                families[f"methods:{family}"] = grid.m

        pairwise_observers = _observer_family(by_scheme, notices)
        if pairwise_observers is not None:
            families["observers"] = pairwise_observers.m
    except StatisticsError as e:
        raise ReportError("Statistical test failed while building report", details=e.details) from e

    boxplots = {
        series: [
            box_plot(values, group.key)
            for group in cells
            if (values := _values(group.records, series))
        ]
        for series in BOXPLOT_SERIES
    }

    from surfbench import __version__

    metadata = ReportMetadata(
        version=__version__,
        adjusted=config.adjusted,
        weighting=config.weighting,
        rank_variant=config.rank_variant,
        rank_model=RANK_MODEL_LABEL,
        ngram_n=config.ngram_n,
        significance_level=config.significance_level,
        families=families,
        record_count=len(scored),
        group_counts={group.key: len(group) for group in cells},
        dataset=dataset,
        generated_at=datetime.now(timezone.utc).isoformat() if config.include_timestamp else None,
    )
    return ReportBundle(
        rows=list(REPORT_ROWS),
        columns=columns,
        table1=table1,
        pairwise_methods=pairwise_methods,
        pairwise_observers=pairwise_observers,
        boxplots=boxplots,
        notices=notices,
        metadata=metadata,
    )


def build_report(
    records: Sequence[ObservationRecord],
    schemes: Mapping[str, Scheme],
    config: Optional[SurfBenchConfig] = None,
    dataset: Optional[str] = None,
    metrics: Optional[MetricsCollector] = None,
) -> ReportBundle:
    """
    Score every record and build the report bundle.

    Args:
        records: Validated observation records
        schemes: Loaded schemes by id
        config: Scoring and report settings
        dataset: Dataset label echoed in metadata
        metrics: Collector for scoring counters and latency

    Raises:
        ReportError: Empty dataset
        ProcessingError: A record could not be scored
    """
    config = config or SurfBenchConfig()
    if not records:
        raise ReportError("no records")
    with logger.performance_context("build_report", records=len(records), jobs=config.jobs):
        scored = score_records(records, schemes, config, metrics)
        return build_report_from_scores(scored, config, dataset)


# Rendering


def round_half_up(value: float, places: int = 4) -> str:
    """Decimal string rounded half-up, e.g. 0.34815 -> '0.3482'."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def _mean_sd(stats: Optional[DescriptiveStats]) -> str:
    if stats is None:
        return "n/a"
    return f"{round_half_up(stats.mean)} ({round_half_up(stats.sd)})"


def _p_cell(result: Optional[TestResult], alpha: float) -> str:
    if result is None:
        return "n/a"
    marker = "*" if result.significant(alpha) else ""
    return f"{round_half_up(result.p_adjusted)}{marker}"


def _markdown_table(header: list[str], rows: list[list[str]]) -> str:
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join(" --- " for _ in header) + "|",
        *("| " + " | ".join(row) + " |" for row in rows),
    ]
    return "\n".join(lines) + "\n"


def _table1_frame(bundle: ReportBundle) -> pd.DataFrame:
    records = []
    for row in bundle.rows:
        for column in bundle.columns:
            stats = bundle.table1[row][column]
            records.append(
                {
                    "row": row,
                    "group": column,
                    "n": stats.n if stats else None,
                    "mean": round_half_up(stats.mean) if stats else None,
                    "sd": round_half_up(stats.sd) if stats else None,
                    "median": round_half_up(stats.median) if stats else None,
                    "q1": round_half_up(stats.q1) if stats else None,
                    "q3": round_half_up(stats.q3) if stats else None,
                }
            )
    return pd.DataFrame(records)


def _grid_frame(grids: Sequence[PairwiseGrid], alpha: float) -> pd.DataFrame:
    records = []
    for grid in grids:
        for row, cells in grid.cells.items():
            omnibus = grid.omnibus.get(row)
            for column, result in cells.items():
                records.append(
                    {
                        "family": grid.family,
                        "row": row,
                        "comparison": column,
                        "m": grid.m,
                        "omnibus_h": round_half_up(omnibus.statistic) if omnibus else None,
                        "omnibus_p": round_half_up(omnibus.p_raw) if omnibus else None,
                        "u": round_half_up(result.statistic) if result else None,
                        "z": round_half_up(result.z) if result and result.z is not None else None,
                        "p_raw": round_half_up(result.p_raw) if result else None,
                        "p_adjusted": round_half_up(result.p_adjusted) if result else None,
                        "effect_r": round_half_up(result.effect_r)
                        if result and result.effect_r is not None
                        else None,
                        "effect_label": result.effect_label if result else None,
                        "method": result.method if result else None,
                        "significant": result.significant(alpha) if result else None,
                    }
                )
    return pd.DataFrame(records)


def _render_table1_markdown(bundle: ReportBundle) -> str:
    header = ["Metric", *bundle.columns]
    rows = [
        [ROW_LABELS[row], *(_mean_sd(bundle.table1[row][column]) for column in bundle.columns)]
        for row in bundle.rows
    ]
    return "# Metrics: mean (SD)\n\n" + _markdown_table(header, rows)


def _render_grid_markdown(title: str, grids: Sequence[PairwiseGrid], alpha: float) -> str:
    parts = [f"# {title}\n", f"Bonferroni-adjusted p-values; * marks p < {alpha}.\n"]
    for grid in grids:
        header = ["Metric", *grid.columns]
        has_omnibus = any(result is not None for result in grid.omnibus.values())
        if has_omnibus:
            header.append("Kruskal-Wallis p")
        rows = []
        for row in _grid_rows(grid):
            cells = [_p_cell(grid.cells[row].get(column), alpha) for column in grid.columns]
            if has_omnibus:
                omnibus = grid.omnibus.get(row)
                cells.append(round_half_up(omnibus.p_raw) if omnibus else "n/a")
            rows.append([ROW_LABELS[row], *cells])
        parts.append(f"\n## {grid.family} (m = {grid.m})\n\n" + _markdown_table(header, rows))
    if not grids:
        parts.append("\nNo comparisons available.\n")
    return "".join(parts)


def _grid_rows(grid: PairwiseGrid) -> list[str]:
    return [row for row in REPORT_ROWS if row in grid.cells]


def _dumps(payload: Any) -> bytes:
    return orjson.dumps(
        payload,
        option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE,
    )


def _write(path: Path, content: Union[str, bytes]) -> Path:
    try:
        if isinstance(content, str):
            path.write_text(content, encoding="utf-8", newline="\n")
        else:
            path.write_bytes(content)
    except OSError as e:
        raise ReportError("Cannot write report file", details={"path": str(path), "error": str(e)}) from e
    return path


def _write_csv(path: Path, frame: pd.DataFrame) -> Path:
    try:
        frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    except OSError as e:
        raise ReportError("Cannot write report file", details={"path": str(path), "error": str(e)}) from e
    return path


def render(
    bundle: ReportBundle,
    format: ReportFormat,
    out_dir: Union[str, Path],
) -> list[Path]:
    """
    Write a report bundle to ``out_dir``.

    ``markdown`` and ``csv`` write table1, pairwise_methods and
    pairwise_observers in that format plus boxplots.json and metadata.json;
    ``json`` writes a single report.json with full-precision values.

    Returns:
        Written paths in a fixed order

    Raises:
        ReportError: Unknown format or I/O failure (with the path)
    """
    if format not in REPORT_FILES:
        raise ReportError(f"Unknown report format '{format}'", details={"format": format})
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ReportError("Cannot create output directory", details={"path": str(out), "error": str(e)}) from e

    if format == "json":
        return [_write(out / "report.json", _dumps(bundle.model_dump(mode="json")))]

    alpha = bundle.metadata.significance_level
    method_grids = list(bundle.pairwise_methods.values())
    observer_grids = [bundle.pairwise_observers] if bundle.pairwise_observers else []
    table1_name, methods_name, observers_name, boxplots_name, metadata_name = REPORT_FILES[format]

    written = []
    if format == "markdown":
        written.append(_write(out / table1_name, _render_table1_markdown(bundle)))
        written.append(
            _write(out / methods_name, _render_grid_markdown("Pairwise method comparisons", method_grids, alpha))
        )
        written.append(
            _write(
                out / observers_name,
                _render_grid_markdown("Active vs passive observers", observer_grids, alpha),
            )
        )
    else:
        written.append(_write_csv(out / table1_name, _table1_frame(bundle)))
        written.append(_write_csv(out / methods_name, _grid_frame(method_grids, alpha)))
        written.append(_write_csv(out / observers_name, _grid_frame(observer_grids, alpha)))

    boxplots = {
        series: [summary.model_dump(mode="json") for summary in summaries]
        for series, summaries in bundle.boxplots.items()
    }
    written.append(_write(out / boxplots_name, _dumps(boxplots)))
    metadata = {**bundle.metadata.model_dump(mode="json"), "notices": bundle.notices}
    written.append(_write(out / metadata_name, _dumps(metadata)))

    logger.info("Wrote report", format=format, out_dir=str(out), files=len(written))
    return written
