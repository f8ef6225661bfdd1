"""
Custom exceptions for SurfBench.

All exceptions inherit from SurfBenchError for easy catching of all library errors.
"""

from typing import Any, Optional


class SurfBenchError(Exception):
    """Base exception for all SurfBench errors."""

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            details_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            return f"{self.message} ({details_str})"
        return self.message


class SchemeError(SurfBenchError):
    """Raised when a scheme definition cannot be parsed or violates an invariant."""

    pass


class DecodeError(SurfBenchError):
    """Raised when wire text does not conform to a scheme's codec."""

    pass


class MetricError(SurfBenchError):
    """Raised when a metric precondition fails (e.g. empty original)."""

    pass


class GuessOrderError(SurfBenchError):
    """Raised when a guessing-order rank model cannot be built."""

    pass


class ValidationError(SurfBenchError):
    """Raised when user-supplied values fail validation."""

    pass


class DatasetError(SurfBenchError):
    """
    Raised when an observation dataset fails to load.

    ``details["diagnostics"]`` holds one entry per offending row.
    """

    pass


class StatisticsError(SurfBenchError):
    """Raised when a statistical test precondition fails."""

    pass


class ReportError(SurfBenchError):
    """Raised when building or writing a report fails."""

    pass


class ProcessingError(SurfBenchError):
    """Raised when batch scoring fails."""

    pass


class ConfigurationError(SurfBenchError):
    """Raised when configuration is invalid."""

    pass
