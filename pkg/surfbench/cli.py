"""
CLI tools for SurfBench.

Subcommands:
    score    Score one original/guess pair
    analyze  Score a dataset and write report tables
    stats    Run a Mann-Whitney or Kruskal-Wallis test on numbers
    schemes  List available schemes

Exit codes: 0 ok, 1 usage, 2 validation, 3 internal.
"""

from __future__ import annotations

import argparse
import math
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn, Optional

import orjson
import pandas as pd
from pydantic import ValidationError as PydanticValidationError

from surfbench.analysis.report import ROW_LABELS, build_report, render
from surfbench.analysis.statistics import kruskal_wallis, mann_whitney
from surfbench.core.config import SurfBenchConfig
from surfbench.core.ensemble import score_sequences
from surfbench.core.scheme import decode, load_schemes, resolve_scheme
from surfbench.exceptions import (
    ConfigurationError,
    DatasetError,
    ProcessingError,
    SurfBenchError,
    ValidationError,
)
from surfbench.models.scores import MetricId
from surfbench.models.stats import TestResult
from surfbench.processing.dataset import load_dataset
from surfbench.processing.demo import demo_records
from surfbench.utils.logging import get_logger, log_performance_metrics, setup_logging
from surfbench.utils.metrics import MetricsCollector

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3

logger = get_logger("surfbench.cli")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dumps(payload: Any) -> str:
    return orjson.dumps(payload, option=orjson.OPT_INDENT_2).decode("utf-8")


def _banner(title: str) -> None:
    print("=" * 60)
    print(title)
    print("=" * 60)


class UsageError(Exception):
    """An option value the configuration model rejects."""


def _first_error(error: PydanticValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}"


def _config_from_args(args: argparse.Namespace) -> SurfBenchConfig:
    try:
        config = SurfBenchConfig()
    except PydanticValidationError as e:
        raise ConfigurationError(
            "Invalid environment configuration", details={"error": _first_error(e)}
        ) from e

    update: dict[str, Any] = {}
    if getattr(args, "schemes_dir", None):
        update["schemes_dir"] = args.schemes_dir
    if getattr(args, "adjusted", None) is not None:
        update["adjusted"] = args.adjusted == "on"
    for name in ("weighting", "rank_variant", "ngram_n", "jobs", "log_level"):
        value = getattr(args, name, None)
        if value is not None:
            update[name] = value
    if getattr(args, "lenient", False):
        update["lenient"] = True
    if getattr(args, "seed", None) is not None:
        update["demo_seed"] = args.seed
    if getattr(args, "no_timestamp", False):
        update["include_timestamp"] = False

    try:
        config = SurfBenchConfig.model_validate({**config.model_dump(), **update})
    except PydanticValidationError as e:
        raise UsageError(_first_error(e)) from e
    config.validate_config()
    setup_logging(config.log_level, config.structured_logging)
    return config


# score


def cmd_score(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    schemes = load_schemes(config.schemes_dir)
    scheme = resolve_scheme(schemes, args.scheme)
    original = decode(scheme, args.original)
    guess = decode(scheme, args.guess)
    metrics, clusters = score_sequences(original, guess, scheme, config)

    if args.format == "json":
        print(
            _dumps(
                {
                    "scheme": scheme.id,
                    "adjusted": metrics.adjusted,
                    "weighting": config.weighting,
                    "rank_variant": config.rank_variant,
                    "metrics": {m.value: metrics.get(m) for m in MetricId},
                    "clusters": clusters.model_dump(mode="json"),
                }
            )
        )
        return EXIT_OK

    _banner(f"SURFBENCH SCORE ({scheme.id})")
    print(f"\nScoring: {config.scoring_label}")
    print("\nMetrics (* = complementary):")
    for metric_id in MetricId:
        print(f"  {metric_id.value:<4}{ROW_LABELS[metric_id.value]:<24}{metrics.get(metric_id):.4f}")
    print("\nComposites:")
    for row in ("C", "D", "G"):
        print(f"  {row:<4}{ROW_LABELS[row]:<24}{clusters.get(row):.4f}")
    print("=" * 60)
    return EXIT_OK


# analyze


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    schemes = load_schemes(config.schemes_dir)
    logger.set_run_id()

    if args.dataset == "demo":
        records = demo_records(config.demo_seed)
        dataset_label = f"demo(seed={config.demo_seed})"
    else:
        records = load_dataset(args.dataset, schemes, lenient=config.lenient)
        dataset_label = Path(args.dataset).name

    metrics = MetricsCollector()
    bundle = build_report(records, schemes, config, dataset=dataset_label, metrics=metrics)
    written = render(bundle, args.format, args.out)
    log_performance_metrics(logger, metrics.get_metrics())

    print(f"Records: {bundle.metadata.record_count}")
    print("Groups:")
    for key, count in bundle.metadata.group_counts.items():
        print(f"  {key:<32}{count:>5}")
    print(
        f"Significant pairs (p_adjusted < {config.significance_level}): {bundle.significant_pairs()}"
    )
    for notice in bundle.notices:
        print(f"Notice: {notice}")
    print(f"Wrote {len(written)} files to {args.out}")
    return EXIT_OK


# stats


def parse_numbers(text: str, name: str) -> list[float]:
    """Parse a comma-separated list of finite numbers; empty text gives []."""
    values = []
    for position, part in enumerate(text.split(",")):
        part = part.strip()
        if not part:
            if text.strip():
                raise ValidationError("Empty value in number list", details={"flag": name, "position": position})
            continue
        try:
            value = float(part)
        except ValueError:
            raise ValidationError(
                f"Malformed number {part!r}", details={"flag": name, "position": position}
            ) from None
        if not math.isfinite(value):
            raise ValidationError(f"Non-finite number {part!r}", details={"flag": name, "position": position})
        values.append(value)
    return values


def _read_group_file(path: str) -> tuple[list[str], list[list[float]]]:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except (OSError, pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise ValidationError("Cannot read groups file", details={"path": path, "error": str(e)}) from e
    labels = [str(column) for column in frame.columns]
    groups = []
    for column in labels:
        cells = [cell for cell in frame[column].tolist() if cell.strip()]
        groups.append(parse_numbers(",".join(cells), column))
    return labels, groups


def _print_result(result: TestResult, output_format: str) -> None:
    if output_format == "json":
        print(_dumps(result.model_dump(mode="json")))
        return
    name = "Mann-Whitney U" if result.test == "mann_whitney" else "Kruskal-Wallis H"
    _banner(f"SURFBENCH STATS ({name})")
    print(f"  Statistic:        {result.statistic:.4f}")
    if result.df is not None:
        print(f"  df:               {result.df}")
    if result.z is not None:
        print(f"  z:                {result.z:.4f}")
    print(f"  p:                {result.p_raw:.4f}")
    print(f"  p (adjusted):     {result.p_adjusted:.4f}  (m={result.m})")
    if result.effect_r is not None:
        print(f"  Effect size r:    {result.effect_r:.4f} ({result.effect_label})")
    print(f"  Method:           {result.method}")
    print(f"  N:                {result.n}")
    print("=" * 60)


def cmd_stats_mwu(args: argparse.Namespace) -> int:
    _config_from_args(args)
    a = parse_numbers(args.a, "--a")
    b = parse_numbers(args.b, "--b")
    result = mann_whitney(a, b, mode=args.mode, m=args.m, labels=["a", "b"])
    _print_result(result, args.format)
    return EXIT_OK


def cmd_stats_kw(args: argparse.Namespace) -> int:
    _config_from_args(args)
    if args.groups:
        labels, groups = _read_group_file(args.groups)
    elif args.group:
        labels = [f"group{i + 1}" for i in range(len(args.group))]
        groups = [parse_numbers(text, f"--group {i + 1}") for i, text in enumerate(args.group)]
    else:
        raise ValidationError("Provide --groups FILE or at least three --group lists")
    result = kruskal_wallis(groups, labels=labels)
    _print_result(result, args.format)
    return EXIT_OK


# schemes


def cmd_schemes(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    schemes = load_schemes(config.schemes_dir)
    _banner("SURFBENCH SCHEMES")
    for scheme_id in sorted(schemes):
        scheme = schemes[scheme_id]
        groups = ", ".join(f"{g.name}:{g.size}" for g in scheme.match_groups)
        categories = ", ".join(f"{c.name}:{c.size}" for c in scheme.entropy_categories)
        print(f"\n{scheme.id}")
        if scheme.description:
            print(f"  {scheme.description}")
        print(f"  Pool size:        {scheme.pool_size}")
        print(f"  Codec:            {scheme.codec}")
        print(f"  Match groups:     {groups}")
        print(f"  Categories:       {categories}")
        if scheme.reference_length is not None:
            space = scheme.search_space()
            verdict = "yes" if scheme.meets_search_space() else "no"
            print(f"  Reference length: {scheme.reference_length}")
            print(f"  Search space:     {space:.3e} ({math.log2(space):.2f} bits, >= 1e21: {verdict})")
    print("=" * 60)
    return EXIT_OK


# parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Log level for stderr logs (default: WARNING)",
    )


def _add_scoring(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--schemes-dir",
        help="Directory of JSON scheme files (default: $SURFBENCH_SCHEMES)",
    )
    parser.add_argument(
        "--adjusted",
        choices=["on", "off"],
        help="Group-weight characteristics and distance metrics (default: on)",
    )
    parser.add_argument("--weighting", choices=["log2", "linear"], help="Match-group weighting (default: log2)")
    parser.add_argument(
        "--rank-variant",
        choices=["log", "linear"],
        help="Guessing-order score variant (default: log)",
    )
    parser.add_argument("--ngram-n", type=int, choices=range(1, 6), metavar="N", help="n-gram length (default: 2)")
    _add_common(parser)


def _jobs(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 64:
        raise argparse.ArgumentTypeError("must be between 1 and 64")
    return value


def build_parser() -> CliParser:
    parser = CliParser(
        prog="surfbench",
        description="Shoulder-surfing vulnerability metrics and statistics",
    )
    subcommands = parser.add_subparsers(dest="command", metavar="{score,analyze,stats,schemes}")
    subcommands.required = True

    score = subcommands.add_parser("score", help="Score one original/guess pair")
    score.add_argument("--scheme", required=True, help="Scheme id")
    score.add_argument("--original", required=True, help="Original password (wire format)")
    score.add_argument("--guess", default="", help="Guess (wire format, default: empty)")
    score.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text)")
    _add_scoring(score)
    score.set_defaults(handler=cmd_score)

    analyze = subcommands.add_parser("analyze", help="Score a dataset and write report tables")
    analyze.add_argument("--dataset", required=True, help="CSV/JSON dataset path, or 'demo'")
    analyze.add_argument("--out", default="report", help="Output directory (default: report)")
    analyze.add_argument(
        "--format",
        choices=["markdown", "csv", "json"],
        default="markdown",
        help="Report format (default: markdown)",
    )
    analyze.add_argument("--lenient", action="store_true", help="Skip invalid rows with a summary")
    analyze.add_argument("--jobs", type=_jobs, help="Worker processes (default: 1)")
    analyze.add_argument("--seed", type=int, help="Seed for the demo dataset (default: 274)")
    analyze.add_argument("--no-timestamp", action="store_true", help="Omit the timestamp from metadata.json")
    _add_scoring(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    stats_parser = subcommands.add_parser("stats", help="Run a statistical test")
    tests = stats_parser.add_subparsers(dest="test", metavar="{mwu,kw}")
    tests.required = True

    mwu = tests.add_parser("mwu", help="Mann-Whitney U test")
    mwu.add_argument("--a", required=True, help="Comma-separated values of group a")
    mwu.add_argument("--b", required=True, help="Comma-separated values of group b")
    mwu.add_argument("--m", type=int, default=1, help="Bonferroni comparison count (default: 1)")
    mwu.add_argument("--mode", choices=["auto", "exact", "normal"], default="auto", help="p-value method")
    mwu.add_argument("--format", choices=["text", "json"], default="text", help="Output format")
    _add_common(mwu)
    mwu.set_defaults(handler=cmd_stats_mwu)

    kw = tests.add_parser("kw", help="Kruskal-Wallis H test")
    kw.add_argument("--groups", help="CSV file, one column per group")
    kw.add_argument("--group", action="append", help="Comma-separated values of one group (repeat)")
    kw.add_argument("--format", choices=["text", "json"], default="text", help="Output format")
    _add_common(kw)
    kw.set_defaults(handler=cmd_stats_kw)

    schemes = subcommands.add_parser("schemes", help="List available schemes")
    schemes.add_argument("--schemes-dir", help="Directory of JSON scheme files (default: $SURFBENCH_SCHEMES)")
    _add_common(schemes)
    schemes.set_defaults(handler=cmd_schemes)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if getattr(args, "m", 1) < 1:
        print("surfbench: error: --m must be a positive integer", file=sys.stderr)
        return EXIT_USAGE

    try:
        return int(args.handler(args))
    except UsageError as e:
        print(f"surfbench: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ProcessingError as e:
        print(f"surfbench: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except DatasetError as e:
        print(f"surfbench: error: {e.message}", file=sys.stderr)
        for diagnostic in e.details.get("diagnostics", []):
            print(
                f"  row {diagnostic['row']}, column {diagnostic['column']}: {diagnostic['reason']}",
                file=sys.stderr,
            )
        return EXIT_VALIDATION
    except SurfBenchError as e:
        print(f"surfbench: error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as e:
        print(f"surfbench: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
