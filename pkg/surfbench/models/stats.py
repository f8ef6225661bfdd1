"""
Statistical result models.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

EffectLabel = Literal["negligible", "small", "medium", "large"]


class TestResult(BaseModel):
    """
    Outcome of one hypothesis test.

    ``p_adjusted`` is the Bonferroni-adjusted p-value for a family of ``m``
    comparisons. Effect sizes are reported for Mann-Whitney tests only.
    """

    __test__ = False  # not a pytest class

    model_config = ConfigDict(frozen=True)

    test: Literal["kruskal_wallis", "mann_whitney"]
    statistic: float = Field(description="H for Kruskal-Wallis, U for Mann-Whitney")
    z: Optional[float] = Field(default=None, description="Normal-approximation z (Mann-Whitney)")
    p_raw: float = Field(ge=0.0, le=1.0)
    p_adjusted: float = Field(ge=0.0, le=1.0)
    m: int = Field(default=1, ge=1, description="Comparisons in the Bonferroni family")
    effect_r: Optional[float] = Field(default=None, ge=0.0)
    effect_label: Optional[EffectLabel] = None
    method: Literal["exact", "normal_approx", "chi_square"]
    df: Optional[int] = Field(default=None, ge=1, description="Degrees of freedom (Kruskal-Wallis)")
    n: int = Field(ge=1, description="Total observations")
    groups: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_adjustment(self) -> "TestResult":
        expected = min(1.0, self.m * self.p_raw)
        if abs(self.p_adjusted - expected) > 1e-12:
            raise ValueError("p_adjusted must equal min(1, m * p_raw)")
        return self

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_adjusted < alpha


class DescriptiveStats(BaseModel):
    """Summary of one sample; quartiles by linear interpolation."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    mean: float
    sd: float = Field(ge=0.0, description="Sample standard deviation (n - 1)")
    median: float
    q1: float
    q3: float
    min: float
    max: float


class BoxPlotSummary(BaseModel):
    """Five-number summary with Tukey fences for one group."""

    model_config = ConfigDict(frozen=True)

    group: str
    n: int = Field(ge=1)
    min: float
    q1: float
    median: float
    q3: float
    max: float
    lower_fence: float
    upper_fence: float
    whisker_low: float
    whisker_high: float
    outliers: list[float] = Field(default_factory=list)
