import pytest

from surfbench.core.config import SurfBenchConfig
from surfbench.core.scheme import get_preset, load_schemes
from surfbench.models.records import ObservationRecord


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch, tmp_path):
    for name in ("SURFBENCH_SCHEMES", "SURFBENCH_JOBS", "SURFBENCH_ADJUSTED", "SURFBENCH_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def config() -> SurfBenchConfig:
    return SurfBenchConfig(include_timestamp=False)


@pytest.fixture
def schemes():
    return load_schemes()


@pytest.fixture
def textual():
    return get_preset("textual")


@pytest.fixture
def gcps():
    return get_preset("gcps")


@pytest.fixture
def assoc():
    return get_preset("assoc-list")


@pytest.fixture
def make_record():
    counter = {"n": 0}

    def factory(scheme_id, original, guess="", observer_type="active", login_time_s=None, **kwargs):
        counter["n"] += 1
        n = counter["n"]
        return ObservationRecord(
            record_id=kwargs.get("record_id", f"r{n:03d}"),
            scheme_id=scheme_id,
            participant_id=kwargs.get("participant_id", f"P{n:03d}"),
            observer_type=observer_type,
            original=original,
            guess=guess,
            login_time_s=login_time_s,
        )

    return factory
