"""
Structured logging utilities with performance tracking.
"""

import logging
import sys
import time
import uuid
from collections.abc import Iterator
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Optional

import orjson


class StructuredLogger:
    """
    Structured JSON logger with run IDs.

    Features:
    - JSON output for log aggregation
    - Run ID for correlating one CLI invocation
    - Contextual information
    """

    def __init__(self, name: str, level: Optional[str] = None) -> None:
        self.name = name
        self.logger = logging.getLogger(name)
        if level is not None:
            self.logger.setLevel(getattr(logging, level.upper()))
        self.run_id: Optional[str] = None

    def set_run_id(self, run_id: Optional[str] = None) -> str:
        """
        Set run ID for log correlation.

        Args:
            run_id: Optional run ID (generates UUID if None)

        Returns:
            Run ID
        """
        self.run_id = run_id or str(uuid.uuid4())
        return self.run_id

    def _format_message(self, level: str, message: str, **kwargs: Any) -> str:
        """Format log message as JSON."""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "logger": self.name,
            "message": message,
            "run_id": self.run_id,
            **kwargs,
        }

        return orjson.dumps(log_data, default=str).decode("utf-8")

    def debug(self, message: str, **kwargs: Any) -> None:
        """Log debug message."""
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(self._format_message("DEBUG", message, **kwargs))

    def info(self, message: str, **kwargs: Any) -> None:
        """Log info message."""
        if self.logger.isEnabledFor(logging.INFO):
            self.logger.info(self._format_message("INFO", message, **kwargs))

    def warning(self, message: str, **kwargs: Any) -> None:
        """Log warning message."""
        self.logger.warning(self._format_message("WARNING", message, **kwargs))

    def error(self, message: str, **kwargs: Any) -> None:
        """Log error message."""
        self.logger.error(self._format_message("ERROR", message, **kwargs))

    @contextmanager
    def performance_context(self, operation: str, **kwargs: Any) -> Iterator[None]:
        """
        Context manager for tracking operation performance.

        Args:
            operation: Name of the operation being tracked
            **kwargs: Additional context to log

        Example:
            >>> with logger.performance_context("score_records", records=274):
            >>>     # score
            >>>     pass
        """
        start_time = time.perf_counter()
        self.debug(f"Starting {operation}", operation=operation, **kwargs)

        try:
            yield
            duration_ms = (time.perf_counter() - start_time) * 1000
            self.info(
                f"Completed {operation}",
                operation=operation,
                duration_ms=duration_ms,
                status="success",
                **kwargs,
            )
        except Exception as e:
            duration_ms = (time.perf_counter() - start_time) * 1000
            self.error(
                f"Failed {operation}",
                operation=operation,
                duration_ms=duration_ms,
                status="failed",
                error=str(e),
                error_type=type(e).__name__,
                **kwargs,
            )
            raise


def setup_logging(
    level: str = "WARNING",
    structured: bool = True,
) -> None:
    """
    Setup logging configuration.

    Logs go to stderr; stdout is reserved for command output.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        structured: Whether to use structured JSON logging
    """
    handler = logging.StreamHandler(sys.stderr)
    if structured:
        handler.setFormatter(logging.Formatter("%(message)s"))
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )

    for existing in list(logging.root.handlers):
        logging.root.removeHandler(existing)
    logging.root.setLevel(getattr(logging, level.upper()))
    logging.root.addHandler(handler)


def get_logger(name: str, level: Optional[str] = None) -> StructuredLogger:
    """
    Get structured logger instance.

    Args:
        name: Logger name
        level: Log level (inherits the root level if None)

    Returns:
        StructuredLogger instance
    """
    return StructuredLogger(name, level)


def log_performance_metrics(logger: StructuredLogger, metrics: dict[str, Any]) -> None:
    """
    Log performance metrics in a structured format.

    Args:
        logger: StructuredLogger instance
        metrics: Dictionary of metrics to log
    """
    logger.info("Performance metrics", **metrics)
