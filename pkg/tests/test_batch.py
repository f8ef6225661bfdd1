import asyncio

import pytest

from surfbench.exceptions import ProcessingError
from surfbench.processing import BatchProcessor
from surfbench.processing.batch import score_records
from surfbench.processing.demo import demo_records
from surfbench.utils.metrics import MetricsCollector


def test_worker_count_does_not_change_results(schemes, config):
    records = demo_records()[:60]

    inline = score_records(records, schemes, config)
    parallel = score_records(records, schemes, config.model_copy(update={"jobs": 2}))

    assert [r.record_id for r in parallel] == [r.record_id for r in records]
    assert parallel == inline


def test_unknown_scheme_fails_batch(schemes, config, make_record):
    records = [make_record("textual", "abc", "abc"), make_record("pin", "1234", "1234")]

    with pytest.raises(ProcessingError) as exc_info:
        score_records(records, schemes, config)

    (error,) = exc_info.value.details["errors"]
    assert error.startswith("r002:")
    assert "pin" in error


def test_processor_collects_errors(schemes, config, make_record):
    records = [make_record("textual", "abc", "abd"), make_record("gcps", "W:N:f3", "W:N:z9")]

    result = asyncio.run(BatchProcessor(schemes, config).process_records(records))

    assert (result.total_records, result.successful, result.failed) == (2, 1, 1)
    assert result.records[0].record_id == "r001"
    assert result.errors[0].startswith("r002:")


def test_processor_counts_each_run_separately(schemes, config, make_record):
    processor = BatchProcessor(schemes, config)
    failing = [make_record("gcps", "W:N:f3", "W:N:z9")]
    passing = [make_record("textual", "abc", "abd"), make_record("textual", "abc", "")]

    asyncio.run(processor.process_records(failing))
    result = asyncio.run(processor.process_records(passing))

    assert (result.total_records, result.successful, result.failed) == (2, 2, 0)
    assert result.errors == []


def test_metrics_count_scored_records(schemes, config, make_record):
    metrics = MetricsCollector()
    records = [make_record("textual", "abc", "abd"), make_record("textual", "abc", "")]

    score_records(records, schemes, config, metrics)

    snapshot = metrics.get_metrics()
    assert snapshot["records_total"] == 2
    assert snapshot["records_scored"] == {"textual/success": 2}
    assert snapshot["scoring_observations"] == 2
    assert snapshot["active_workers"] == 0
