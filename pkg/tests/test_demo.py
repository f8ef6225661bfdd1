from collections import Counter

from surfbench.processing.dataset import group_records, load_dataset, write_dataset
from surfbench.processing.demo import DEMO_RECORD_COUNT, demo_records


def test_demo_shape():
    records = demo_records()

    assert len(records) == DEMO_RECORD_COUNT == 274
    sizes = {group.key: len(group) for group in group_records(records)}
    assert sizes == {
        "assoc-list-keyboard/active": 34,
        "assoc-list-keyboard/passive": 34,
        "assoc-list-mouse/active": 34,
        "assoc-list-mouse/passive": 34,
        "gcps/active": 35,
        "gcps/passive": 34,
        "textual/active": 35,
        "textual/passive": 34,
    }
    assert records[0].record_id == "demo-001"
    assert records[-1].record_id == "demo-274"


def test_demo_is_deterministic():
    assert demo_records(274) == demo_records(274)
    assert demo_records(274) != demo_records(275)


def test_demo_uses_one_original_per_method():
    originals = Counter((record.scheme_id, record.original) for record in demo_records())

    assert len(originals) == 4


def test_demo_records_are_valid_dataset_rows(tmp_path, schemes):
    records = demo_records()
    path = write_dataset(records, tmp_path / "demo.csv")

    assert load_dataset(path, schemes) == records


def test_demo_passive_observers_recall_less():
    records = [record for record in demo_records() if record.scheme_id != "textual"]
    recalled = Counter()
    for record in records:
        recalled[record.observer_type] += len(record.guess.split())

    assert recalled["active"] > recalled["passive"]
