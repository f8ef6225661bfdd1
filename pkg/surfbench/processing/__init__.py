"""Dataset and batch processing modules."""

__all__ = [
    "BatchProcessor",
    "load_dataset",
    "write_dataset",
    "demo_records",
]


def __getattr__(name: str):
    if name == "BatchProcessor":
        from surfbench.processing.batch import BatchProcessor

        return BatchProcessor
    if name in ("load_dataset", "write_dataset"):
        from surfbench.processing import dataset

        return getattr(dataset, name)
    if name == "demo_records":
        from surfbench.processing.demo import demo_records

        return demo_records
    raise AttributeError(name)
