"""
Observation dataset loading, validation, export and grouping.

CSV is the primary format (UTF-8, header exactly as ``DATASET_COLUMNS``); a
JSON document ``{"records": [...]}`` with the same fields is also accepted.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Generic, Literal, Optional, Protocol, TypeVar, Union

import orjson
import pandas as pd
from pydantic import ValidationError as PydanticValidationError

from surfbench.core.scheme import Scheme, decode
from surfbench.exceptions import DatasetError, DecodeError
from surfbench.models.records import DATASET_COLUMNS, OBSERVER_TYPES, ObservationRecord
from surfbench.utils.logging import get_logger

logger = get_logger(__name__)

GroupKey = Literal["scheme", "scheme_observer"]

_WIDTH_KEY = "__fields__"


class _Groupable(Protocol):
    @property
    def scheme_id(self) -> str: ...

    @property
    def observer_type(self) -> str: ...


R = TypeVar("R", bound=_Groupable)


@dataclass(frozen=True)
class RowDiagnostic:
    """Why a dataset row was rejected. ``row`` counts data rows from 1."""

    row: int
    column: str
    reason: str

    def as_dict(self) -> dict[str, Any]:
        return {"row": self.row, "column": self.column, "reason": self.reason}

    def __str__(self) -> str:
        return f"row {self.row}, column {self.column}: {self.reason}"


@dataclass
class DatasetLoad:
    """Validated records plus diagnostics for rejected rows."""

    records: list[ObservationRecord] = field(default_factory=list)
    diagnostics: list[RowDiagnostic] = field(default_factory=list)
    total_rows: int = 0

    @property
    def skipped_rows(self) -> int:
        return len({d.row for d in self.diagnostics})


@dataclass(frozen=True)
class RecordGroup(Generic[R]):
    """One block of a deterministic record partition."""

    key: str
    scheme_id: str
    observer_type: Optional[str]
    records: tuple[R, ...]

    def __len__(self) -> int:
        return len(self.records)


def _read_csv_rows(path: Path) -> list[dict[str, str]]:
    # one unpadded list per row
    try:
        with path.open(encoding="utf-8-sig", newline="") as handle:
            lines = [cells for cells in csv.reader(handle) if cells]
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        raise DatasetError("Cannot read dataset", details={"path": str(path), "error": str(e)}) from e
    if not lines:
        raise DatasetError("no records", details={"path": str(path)})

    header = lines[0]
    if header != list(DATASET_COLUMNS):
        raise DatasetError(
            "Dataset header does not match the documented columns",
            details={
                "path": str(path),
                "expected": ",".join(DATASET_COLUMNS),
                "actual": ",".join(header),
            },
        )

    rows = []
    for cells in lines[1:]:
        row = dict(zip(DATASET_COLUMNS, cells))
        if len(cells) != len(DATASET_COLUMNS):
            row[_WIDTH_KEY] = str(len(cells))
        rows.append(row)
    return rows


def _json_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _read_json_rows(path: Path) -> list[dict[str, str]]:
    try:
        document = orjson.loads(path.read_bytes())
    except OSError as e:
        raise DatasetError("Cannot read dataset", details={"path": str(path), "error": str(e)}) from e
    except orjson.JSONDecodeError as e:
        raise DatasetError(
            f"Dataset is not valid JSON: {e.msg}",
            details={"path": str(path), "line": e.lineno, "column": e.colno},
        ) from e

    if not isinstance(document, dict) or not isinstance(document.get("records"), list):
        raise DatasetError("JSON dataset must be an object with a 'records' array", details={"path": str(path)})

    rows = []
    for item in document["records"]:
        if not isinstance(item, dict):
            item = {}
        row = {column: _json_cell(item.get(column)) for column in DATASET_COLUMNS}
        unknown = sorted(set(item) - set(DATASET_COLUMNS))
        if unknown:
            row["__unknown__"] = ",".join(unknown)
        rows.append(row)
    return rows


def read_rows(path: Union[str, Path]) -> list[dict[str, str]]:
    """Read raw dataset rows as strings, checking the header/shape only."""
    path = Path(path)
    if not path.is_file():
        raise DatasetError("Dataset file not found", details={"path": str(path)})
    if path.suffix.lower() == ".json":
        return _read_json_rows(path)
    return _read_csv_rows(path)


def _parse_login_time(text: str) -> Optional[float]:
    if text.strip() == "":
        return None
    value = float(text)
    if not math.isfinite(value) or value < 0.0:
        raise ValueError("login time must be a non-negative number of seconds")
    return value


class _RowValidator:
    """Validates rows one at a time, tracking ids and participants already seen."""

    def __init__(self, schemes: Mapping[str, Scheme]) -> None:
        self.schemes = schemes
        self.seen_pairs: dict[tuple[str, str], int] = {}
        self.seen_ids: dict[str, int] = {}

    def check(
        self, number: int, row: Mapping[str, str]
    ) -> tuple[Optional[ObservationRecord], list[RowDiagnostic]]:
        problems: list[RowDiagnostic] = []

        def reject(column: str, reason: str) -> None:
            problems.append(RowDiagnostic(row=number, column=column, reason=reason))

        width = row.get(_WIDTH_KEY)
        if width is not None:
            expected = len(DATASET_COLUMNS)
            if int(width) < expected:
                reject(DATASET_COLUMNS[int(width)], f"row has {width} of {expected} fields")
            else:
                reject(DATASET_COLUMNS[-1], f"row has {width} fields, expected {expected}")
            return None, problems

        if row.get("__unknown__"):
            reject(row["__unknown__"], "unknown field")

        record_id = row.get("record_id", "").strip() or f"row-{number}"
        scheme_id = row.get("scheme_id", "").strip()
        participant_id = row.get("participant_id", "").strip()
        observer_type = row.get("observer_type", "").strip()
        original = row.get("original", "")
        guess = row.get("guess", "")

        scheme = self.schemes.get(scheme_id)
        if scheme is None:
            reject("scheme_id", f"unknown scheme '{scheme_id}'")
        if not participant_id:
            reject("participant_id", "participant_id is empty")
        if observer_type not in OBSERVER_TYPES:
            reject("observer_type", f"'{observer_type}' is not one of active, passive")

        if scheme is not None:
            try:
                if decode(scheme, original).length == 0:
                    reject("original", "original password is empty")
            except DecodeError as e:
                reject("original", str(e))
            try:
                decode(scheme, guess)
            except DecodeError as e:
                reject("guess", str(e))

        login_time = None
        try:
            login_time = _parse_login_time(row.get("login_time_s", ""))
        except ValueError as e:
            reject("login_time_s", str(e))

        if record_id in self.seen_ids:
            reject("record_id", f"duplicate record_id (first seen in row {self.seen_ids[record_id]})")
        pair = (participant_id, scheme_id)
        if participant_id and pair in self.seen_pairs:
            reject(
                "participant_id",
                f"participant already observed scheme '{scheme_id}' in row {self.seen_pairs[pair]}",
            )
        if problems:
            return None, problems

        try:
            record = ObservationRecord(
                record_id=record_id,
                scheme_id=scheme_id,
                participant_id=participant_id,
                observer_type=observer_type,  # type: ignore[arg-type]
                original=original,
                guess=guess,
                login_time_s=login_time,
            )
        except PydanticValidationError as e:
            first = e.errors()[0]
            reject(".".join(str(p) for p in first["loc"]), first["msg"])
            return None, problems

        self.seen_ids[record_id] = number
        self.seen_pairs[pair] = number
        return record, problems


def validate_rows(
    rows: Sequence[Mapping[str, str]],
    schemes: Mapping[str, Scheme],
) -> DatasetLoad:
    """
    Validate raw rows against the loaded schemes.

    Every rejected row yields at least one diagnostic; valid rows become records
    in input order.
    """
    result = DatasetLoad(total_rows=len(rows))
    validator = _RowValidator(schemes)
    for number, row in enumerate(rows, start=1):
        record, problems = validator.check(number, row)
        if record is not None:
            result.records.append(record)
        result.diagnostics.extend(problems)
    return result


def load_dataset(
    path: Union[str, Path],
    schemes: Mapping[str, Scheme],
    lenient: bool = False,
) -> list[ObservationRecord]:
    """
    Load and validate an observation dataset.

    Args:
        path: CSV or JSON dataset
        schemes: Loaded schemes by id
        lenient: Skip invalid rows with a logged summary instead of failing

    Returns:
        Records in file order

    Raises:
        DatasetError: No records, bad header, or (strict mode) any invalid row.
            ``details["diagnostics"]`` lists row, column and reason.
    """
    rows = read_rows(path)
    if not rows:
        raise DatasetError("no records", details={"path": str(path)})

    loaded = validate_rows(rows, schemes)
    if loaded.diagnostics:
        if not lenient:
            raise DatasetError(
                f"{loaded.skipped_rows} of {loaded.total_rows} rows are invalid",
                details={
                    "path": str(path),
                    "diagnostics": [d.as_dict() for d in loaded.diagnostics],
                },
            )
        logger.warning(
            "Skipped invalid dataset rows",
            path=str(path),
            skipped=loaded.skipped_rows,
            total=loaded.total_rows,
            diagnostics=[str(d) for d in loaded.diagnostics[:20]],
        )

    if not loaded.records:
        raise DatasetError("no records", details={"path": str(path)})

    logger.info("Loaded dataset", path=str(path), records=len(loaded.records))
    return loaded.records


def _record_row(record: ObservationRecord) -> dict[str, str]:
    return {
        "record_id": record.record_id,
        "scheme_id": record.scheme_id,
        "participant_id": record.participant_id,
        "observer_type": record.observer_type,
        "original": record.original,
        "guess": record.guess,
        "login_time_s": "" if record.login_time_s is None else repr(record.login_time_s),
    }


def write_dataset(records: Iterable[ObservationRecord], path: Union[str, Path]) -> Path:
    """
    Write records in the documented CSV (or, for ``.json`` paths, JSON) form.

    The output loads back into equivalent records.
    """
    path = Path(path)
    records = list(records)
    rows = [_record_row(record) for record in records]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.suffix.lower() == ".json":
            payload = [
                {**row, "login_time_s": record.login_time_s}
                for row, record in zip(rows, records)
            ]
            path.write_bytes(orjson.dumps({"records": payload}, option=orjson.OPT_INDENT_2))
        else:
            frame = pd.DataFrame(rows, columns=list(DATASET_COLUMNS))
            frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    except OSError as e:
        raise DatasetError("Cannot write dataset", details={"path": str(path), "error": str(e)}) from e
    return path


_OBSERVER_ORDER = {observer: index for index, observer in enumerate(OBSERVER_TYPES)}


def group_records(records: Iterable[R], key: GroupKey = "scheme_observer") -> list[RecordGroup[R]]:
    """
    Partition records by scheme, or by scheme and observer type.

    Groups are ordered by scheme id, then active before passive; records keep
    their input order inside each group.
    """
    buckets: dict[tuple[str, Optional[str]], list[R]] = {}
    for record in records:
        scheme_id = record.scheme_id
        observer = record.observer_type if key == "scheme_observer" else None
        buckets.setdefault((scheme_id, observer), []).append(record)

    ordered = sorted(
        buckets,
        key=lambda k: (k[0], _OBSERVER_ORDER.get(k[1], len(_OBSERVER_ORDER)) if k[1] else -1),
    )
    return [
        RecordGroup(
            key=scheme_id if observer is None else f"{scheme_id}/{observer}",
            scheme_id=scheme_id,
            observer_type=observer,
            records=tuple(buckets[(scheme_id, observer)]),
        )
        for scheme_id, observer in ordered
    ]
