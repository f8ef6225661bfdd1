"""
Batch scoring of observation records.
"""

from __future__ import annotations

import asyncio
import math
import time
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from surfbench.core.config import SurfBenchConfig
from surfbench.core.ensemble import score_record
from surfbench.core.scheme import Scheme, resolve_scheme
from surfbench.exceptions import ProcessingError
from surfbench.models.records import ObservationRecord
from surfbench.models.scores import BatchResult, ScoredRecord
from surfbench.utils.logging import get_logger
from surfbench.utils.metrics import MetricsCollector

logger = get_logger(__name__)

# (record_id, scheme_id, scored record or None, error or None, latency seconds)
Outcome = tuple[str, str, Optional[ScoredRecord], Optional[str], float]


def _score_chunk(
    records: Sequence[ObservationRecord],
    schemes: Mapping[str, Scheme],
    config: SurfBenchConfig,
) -> list[Outcome]:
    """Score a chunk of records; runs inline or in a worker process."""
    outcomes: list[Outcome] = []
    for record in records:
        start = time.perf_counter()
        try:
            scored = score_record(record, resolve_scheme(schemes, record.scheme_id), config)
        except Exception as e:
            outcomes.append(
                (record.record_id, record.scheme_id, None, str(e), time.perf_counter() - start)
            )
        else:
            outcomes.append(
                (record.record_id, record.scheme_id, scored, None, time.perf_counter() - start)
            )
    return outcomes


class BatchProcessor:
    """
    Parallel scorer for observation records.

    Features:
    - Worker processes up to ``config.jobs``
    - Results in input order regardless of worker count
    - Per-record error collection
    - Metrics collection
    """

    def __init__(
        self,
        schemes: Mapping[str, Scheme],
        config: SurfBenchConfig,
        metrics: Optional[MetricsCollector] = None,
    ) -> None:
        self.schemes = schemes
        self.config = config
        self.metrics = metrics or MetricsCollector()
        self._processed = 0
        self._failed = 0
        self._errors: list[str] = []

    def _chunks(self, records: Sequence[ObservationRecord]) -> list[Sequence[ObservationRecord]]:
        size = max(1, math.ceil(len(records) / (self.config.jobs * 4)))
        return [records[i : i + size] for i in range(0, len(records), size)]

    def _schemes_for(self, chunk: Sequence[ObservationRecord]) -> dict[str, Scheme]:
        needed = {record.scheme_id for record in chunk}
        return {scheme_id: self.schemes[scheme_id] for scheme_id in needed if scheme_id in self.schemes}

    async def process_records(self, records: Sequence[ObservationRecord]) -> BatchResult:
        """
        Score records.

        Args:
            records: Validated observation records

        Returns:
            BatchResult with scored records in input order and collected errors
        """
        start_time = time.perf_counter()
        self._processed = 0
        self._failed = 0
        self._errors = []
        chunks = self._chunks(records)
        self.metrics.update_active_workers(self.config.jobs)

        try:
            if self.config.jobs == 1:
                results: list[list[Outcome] | BaseException] = [
                    _score_chunk(chunk, self._schemes_for(chunk), self.config) for chunk in chunks
                ]
            else:
                loop = asyncio.get_running_loop()
                with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
                    tasks = [
                        loop.run_in_executor(
                            pool, _score_chunk, chunk, self._schemes_for(chunk), self.config
                        )
                        for chunk in chunks
                    ]
                    results = await asyncio.gather(*tasks, return_exceptions=True)
        finally:
            self.metrics.update_active_workers(0)

        scored: list[ScoredRecord] = []
        for chunk, result in zip(chunks, results):
            if isinstance(result, BaseException):
                for record in chunk:
                    self._failed += 1
                    self._errors.append(f"{record.record_id}: worker failed: {result}")
                    self.metrics.record_scored(record.scheme_id, "error", 0.0)
                continue
            for record_id, scheme_id, record, error, latency in result:
                if record is None:
                    self._failed += 1
                    self._errors.append(f"{record_id}: {error}")
                    self.metrics.record_scored(scheme_id, "error", latency)
                else:
                    self._processed += 1
                    scored.append(record)
                    self.metrics.record_scored(scheme_id, "success", latency)

        processing_time_ms = (time.perf_counter() - start_time) * 1000
        logger.info(
            "Scored records",
            total=len(records),
            successful=self._processed,
            failed=self._failed,
            jobs=self.config.jobs,
            duration_ms=processing_time_ms,
        )
        return BatchResult(
            total_records=len(records),
            successful=self._processed,
            failed=self._failed,
            processing_time_ms=processing_time_ms,
            records=scored,
            errors=list(self._errors),
        )


def score_records(
    records: Sequence[ObservationRecord],
    schemes: Mapping[str, Scheme],
    config: SurfBenchConfig,
    metrics: Optional[MetricsCollector] = None,
) -> list[ScoredRecord]:
    """
    Score all records, failing if any record cannot be scored.

    Raises:
        ProcessingError: One or more records failed; ``details["errors"]`` lists them
    """
    processor = BatchProcessor(schemes, config, metrics)
    result = asyncio.run(processor.process_records(records))
    if result.failed:
        raise ProcessingError(
            f"Failed to score {result.failed} of {result.total_records} records",
            details={"errors": result.errors[:20]},
        )
    return result.records
