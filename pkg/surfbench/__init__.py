"""
SurfBench

Shoulder-surfing vulnerability metrics and statistical comparison of
authentication schemes.

Example:
    >>> from surfbench import score_guess
    >>> scored = score_guess("gcps", original="W:N:f3", guess="B:N:f3")
    >>> print(scored.metrics.C1)
"""

from typing import Optional

from surfbench.core.config import SurfBenchConfig
from surfbench.core.scheme import PasswordSeq, Scheme, decode, encode, get_preset, load_scheme
from surfbench.exceptions import (
    ConfigurationError,
    DatasetError,
    DecodeError,
    GuessOrderError,
    MetricError,
    ProcessingError,
    ReportError,
    SchemeError,
    StatisticsError,
    SurfBenchError,
    ValidationError,
)
from surfbench.models.records import ObservationRecord
from surfbench.models.scores import ClusterScores, MetricId, MetricVector, ScoredRecord
from surfbench.models.stats import TestResult
from surfbench.processing.batch import BatchProcessor

__version__ = "0.3.0"
__author__ = "SurfBench Contributors"
__license__ = "MIT"

__all__ = [
    # Core classes
    "Scheme",
    "PasswordSeq",
    "BatchProcessor",
    "SurfBenchConfig",
    # Models
    "ObservationRecord",
    "MetricId",
    "MetricVector",
    "ClusterScores",
    "ScoredRecord",
    "TestResult",
    # Exceptions
    "SurfBenchError",
    "SchemeError",
    "DecodeError",
    "MetricError",
    "GuessOrderError",
    "ValidationError",
    "DatasetError",
    "StatisticsError",
    "ReportError",
    "ProcessingError",
    "ConfigurationError",
    # Utilities
    "decode",
    "encode",
    "get_preset",
    "load_scheme",
    # High-level API
    "score_guess",
]


def score_guess(
    scheme_id: str,
    original: str,
    guess: str = "",
    config: Optional[SurfBenchConfig] = None,
    schemes_dir: Optional[str] = None,
) -> ScoredRecord:
    """
    One-liner API for scoring a single observation.

    Args:
        scheme_id: Built-in preset id or the id of a scheme in ``schemes_dir``
        original: Original password in the scheme's wire format
        guess: Observer's guess in the same format (may be empty)
        config: Optional custom SurfBenchConfig (uses defaults if None)
        schemes_dir: Directory of extra scheme files (defaults to config.schemes_dir)

    Returns:
        ScoredRecord with all fourteen metrics and the three composites

    Example:
        >>> scored = score_guess("textual", "Tr0ub4dor&3", "troubador")
        >>> print(scored.clusters.guessing_order)
    """
    from surfbench.core.ensemble import score_record
    from surfbench.core.scheme import load_schemes, resolve_scheme

    if config is None:
        config = SurfBenchConfig()

    schemes = load_schemes(schemes_dir or config.schemes_dir)
    record = ObservationRecord(
        record_id="score-guess",
        scheme_id=scheme_id,
        participant_id="anonymous",
        observer_type="active",
        original=original,
        guess=guess,
    )
    return score_record(record, resolve_scheme(schemes, scheme_id), config)
