"""Deterministic scoring benchmark over the synthetic demo dataset."""

from __future__ import annotations

import argparse
import time
from pathlib import Path
from typing import Any, Optional

import orjson

from surfbench.core.config import SurfBenchConfig
from surfbench.core.scheme import load_schemes
from surfbench.models.scores import ScoredRecord
from surfbench.processing.batch import score_records
from surfbench.processing.dataset import group_records
from surfbench.processing.demo import DEFAULT_SEED, demo_records
from surfbench.utils.metrics import MetricsCollector


ROOT = Path(__file__).resolve().parent
DEFAULT_RESULTS_DIR = ROOT / "results"
DEFAULT_JOBS = (1, 2, 4)


def composite_means(scored: list[ScoredRecord]) -> dict[str, dict[str, float]]:
    """Mean C, D and G composite per scheme/observer group."""
    means = {}
    for group in group_records(scored):
        means[group.key] = {
            row: sum(record.clusters.get(row) for record in group.records) / len(group)
            for row in ("C", "D", "G")
        }
    return means


def measure_jobs(records: list[Any], jobs: int, config: SurfBenchConfig) -> tuple[dict[str, Any], list[ScoredRecord]]:
    """Score all records with one worker count."""
    metrics = MetricsCollector()
    start = time.perf_counter()
    scored = score_records(records, load_schemes(config.schemes_dir), config.model_copy(update={"jobs": jobs}), metrics)
    elapsed = time.perf_counter() - start
    snapshot = metrics.get_metrics()
    return (
        {
            "jobs": jobs,
            "records": len(scored),
            "wall_seconds": round(elapsed, 4),
            "records_per_second": round(len(scored) / elapsed, 1) if elapsed else None,
            "scoring_seconds_total": round(snapshot["scoring_seconds_total"], 4),
        },
        scored,
    )


def run_benchmark(
    seed: int = DEFAULT_SEED,
    jobs: tuple[int, ...] = DEFAULT_JOBS,
    output_dir: Path = DEFAULT_RESULTS_DIR,
    config: Optional[SurfBenchConfig] = None,
) -> dict[str, Any]:
    """Run the benchmark and write JSON/Markdown results."""
    config = config or SurfBenchConfig()
    records = demo_records(seed)

    runs = []
    baseline: Optional[list[ScoredRecord]] = None
    identical = True
    for count in jobs:
        run, scored = measure_jobs(records, count, config)
        runs.append(run)
        if baseline is None:
            baseline = scored
        elif scored != baseline:
            identical = False

    results = {
        "seed": seed,
        "scoring": config.scoring_label,
        "runs": runs,
        "identical_across_jobs": identical,
        "composite_means": composite_means(baseline or []),
    }

    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / "scoring_benchmark.json").write_bytes(orjson.dumps(results, option=orjson.OPT_INDENT_2))
    (output_dir / "scoring_benchmark.md").write_text(markdown_table(results), encoding="utf-8")
    return results


def markdown_table(results: dict[str, Any]) -> str:
    """Render benchmark results as Markdown."""
    lines = [
        f"# Scoring benchmark (seed {results['seed']}, {results['scoring']})",
        "",
        "| Jobs | Records | Wall (s) | Records/s |",
        "| ---: | ---: | ---: | ---: |",
    ]
    lines.extend(
        f"| {run['jobs']} | {run['records']} | {run['wall_seconds']:.4f} | {run['records_per_second']} |"
        for run in results["runs"]
    )
    lines += [
        "",
        f"Identical results across worker counts: {'yes' if results['identical_across_jobs'] else 'NO'}",
        "",
        "| Group | C | D | G |",
        "| --- | ---: | ---: | ---: |",
    ]
    lines.extend(
        f"| {key} | {means['C']:.4f} | {means['D']:.4f} | {means['G']:.4f} |"
        for key, means in results["composite_means"].items()
    )
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    """Build the benchmark CLI parser."""
    parser = argparse.ArgumentParser(description="Run the offline SurfBench scoring benchmark.")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--jobs", type=int, nargs="+", default=list(DEFAULT_JOBS))
    parser.add_argument("--output-dir", type=Path, default=DEFAULT_RESULTS_DIR)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """CLI entrypoint."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if any(count < 1 for count in args.jobs):
        parser.error("--jobs values must be positive")

    results = run_benchmark(seed=args.seed, jobs=tuple(args.jobs), output_dir=args.output_dir)
    print(markdown_table(results))
    print(f"Results written to: {args.output_dir}")
    return 0 if results["identical_across_jobs"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
