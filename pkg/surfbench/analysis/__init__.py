"""
Statistical tests and report generation.
"""

from surfbench.analysis.report import build_report, render
from surfbench.analysis.statistics import (
    bonferroni,
    describe,
    effect_size,
    kruskal_wallis,
    mann_whitney,
)

__all__ = [
    "build_report",
    "render",
    "bonferroni",
    "describe",
    "effect_size",
    "kruskal_wallis",
    "mann_whitney",
]
