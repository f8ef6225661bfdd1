"""
Report bundle models.
"""

from typing import Optional

from pydantic import BaseModel, Field

from surfbench.models.stats import BoxPlotSummary, DescriptiveStats, TestResult


class PairwiseGrid(BaseModel):
    """
    Row x comparison grid of Bonferroni-adjusted Mann-Whitney tests.

    ``omnibus`` holds the Kruskal-Wallis test per row when the family compares
    three or more groups. Missing cells are ``None``.
    """

    family: str
    m: int = Field(ge=0, description="Comparisons per row used for Bonferroni")
    columns: list[str] = Field(default_factory=list)
    omnibus: dict[str, Optional[TestResult]] = Field(default_factory=dict)
    cells: dict[str, dict[str, Optional[TestResult]]] = Field(default_factory=dict)


class ReportMetadata(BaseModel):
    """Configuration echo and provenance for a report."""

    version: str
    adjusted: bool
    weighting: str
    rank_variant: str
    rank_model: str
    ngram_n: int
    significance_level: float
    families: dict[str, int] = Field(default_factory=dict, description="m per Bonferroni family")
    record_count: int
    group_counts: dict[str, int] = Field(default_factory=dict)
    dataset: Optional[str] = None
    generated_at: Optional[str] = None


class ReportBundle(BaseModel):
    """Everything rendered by a report."""

    rows: list[str]
    columns: list[str]
    table1: dict[str, dict[str, Optional[DescriptiveStats]]]
    pairwise_methods: dict[str, PairwiseGrid] = Field(default_factory=dict)
    pairwise_observers: Optional[PairwiseGrid] = None
    boxplots: dict[str, list[BoxPlotSummary]] = Field(default_factory=dict)
    notices: list[str] = Field(default_factory=list)
    metadata: ReportMetadata

    def significant_pairs(self) -> int:
        """Number of pairwise cells flagged significant across all grids."""
        alpha = self.metadata.significance_level
        grids = list(self.pairwise_methods.values())
        if self.pairwise_observers is not None:
            grids.append(self.pairwise_observers)
        return sum(
            1
            for grid in grids
            for row in grid.cells.values()
            for result in row.values()
            if result is not None and result.significant(alpha)
        )
