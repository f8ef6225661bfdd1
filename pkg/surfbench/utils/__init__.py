"""
Utility modules for SurfBench.
"""

from surfbench.utils.logging import get_logger, setup_logging
from surfbench.utils.metrics import MetricsCollector

__all__ = [
    "get_logger",
    "setup_logging",
    "MetricsCollector",
]
