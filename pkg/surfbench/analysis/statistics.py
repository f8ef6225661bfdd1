"""
Nonparametric tests, effect sizes and descriptive statistics.

All p-values are two-tailed.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Literal, Optional

import numpy as np
from scipy import special, stats

from surfbench.exceptions import StatisticsError
from surfbench.models.stats import BoxPlotSummary, DescriptiveStats, EffectLabel, TestResult

MannWhitneyMode = Literal["auto", "exact", "normal"]

EXACT_MAX_GROUP = 8
TUKEY_K = 1.5


def _as_array(values: Sequence[float], name: str) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1:
        raise StatisticsError("Sample must be one-dimensional", details={"sample": name})
    if not np.all(np.isfinite(array)):
        raise StatisticsError("Sample contains non-finite values", details={"sample": name})
    return array


def bonferroni(p: float, m: int) -> float:
    """Bonferroni adjustment: min(1, m * p)."""
    if not 0.0 <= p <= 1.0:
        raise StatisticsError("p-value out of range", details={"p": p})
    if m < 1:
        raise StatisticsError("Comparison count must be positive", details={"m": m})
    return min(1.0, m * p)


def effect_size(z: float, n: int) -> tuple[float, EffectLabel]:
    """
    Effect size r = |z| / sqrt(N) with Cohen's labels.

    Band boundaries belong to the higher band.
    """
    if n < 1:
        raise StatisticsError("Sample size must be positive", details={"n": n})
    r = abs(z) / math.sqrt(n)
    label: EffectLabel
    if r < 0.1:
        label = "negligible"
    elif r < 0.3:
        label = "small"
    elif r < 0.5:
        label = "medium"
    else:
        label = "large"
    return r, label


def chi2_sf(h: float, df: int) -> float:
    """Chi-square survival function via the regularized upper incomplete gamma."""
    if df < 1:
        raise StatisticsError("Degrees of freedom must be positive", details={"df": df})
    if h <= 0.0:
        return 1.0
    return float(special.gammaincc(df / 2.0, h / 2.0))


def kruskal_wallis(
    groups: Sequence[Sequence[float]],
    labels: Optional[Sequence[str]] = None,
    min_groups: int = 3,
) -> TestResult:
    """
    Kruskal-Wallis H test with tie correction.

    Args:
        groups: Samples, at least ``min_groups`` of them, each with n >= 2
        labels: Optional group names echoed in the result
        min_groups: Minimum number of groups

    Raises:
        StatisticsError: Too few groups or a group with fewer than two values
    """
    if len(groups) < min_groups:
        raise StatisticsError(
            f"Kruskal-Wallis needs at least {min_groups} groups",
            details={"groups": len(groups)},
        )
    arrays = [_as_array(group, f"group{i}") for i, group in enumerate(groups)]
    for i, array in enumerate(arrays):
        if array.size < 2:
            raise StatisticsError(
                "Every group needs at least two values",
                details={"group": labels[i] if labels else i, "n": int(array.size)},
            )

    combined = np.concatenate(arrays)
    df = len(arrays) - 1
    if np.all(combined == combined[0]):
        h = 0.0
    else:
        h = float(stats.kruskal(*arrays).statistic)
    p = chi2_sf(h, df)
    return TestResult(
        test="kruskal_wallis",
        statistic=h,
        p_raw=p,
        p_adjusted=p,
        method="chi_square",
        df=df,
        n=int(combined.size),
        groups=list(labels) if labels else [],
    )


def _tie_sum(combined: np.ndarray) -> float:
    _, counts = np.unique(combined, return_counts=True)
    return float(np.sum(counts.astype(float) ** 3 - counts))


def mann_whitney_z(
    a: Sequence[float], b: Sequence[float], continuity: bool = True
) -> tuple[float, float]:
    """
    Normal-approximation z of the Mann-Whitney U statistic.

    Returns:
        (z, U_a) where z is oriented so that positive means ``a`` ranks higher
    """
    x, y = _as_array(a, "a"), _as_array(b, "b")
    n1, n2 = x.size, y.size
    combined = np.concatenate([x, y])
    ranks = stats.rankdata(combined)
    u_a = float(np.sum(ranks[:n1]) - n1 * (n1 + 1) / 2.0)

    total = n1 + n2
    mu = n1 * n2 / 2.0
    tie_term = _tie_sum(combined) / (total * (total - 1)) if total > 1 else 0.0
    variance = n1 * n2 / 12.0 * ((total + 1) - tie_term)
    if variance <= 0.0:
        return 0.0, u_a

    deviation = u_a - mu
    magnitude = abs(deviation)
    if continuity:
        magnitude = max(0.0, magnitude - 0.5)
    return math.copysign(magnitude, deviation) / math.sqrt(variance), u_a


def mann_whitney(
    a: Sequence[float],
    b: Sequence[float],
    mode: MannWhitneyMode = "auto",
    m: int = 1,
    labels: Optional[Sequence[str]] = None,
) -> TestResult:
    """
    Two-sided Mann-Whitney U test.

    ``auto`` uses the exact null distribution when the smaller sample has at
    most eight values and there are no ties, otherwise the normal approximation
    with tie-corrected variance and a 0.5 continuity correction.

    Args:
        a: First sample (n >= 1)
        b: Second sample (n >= 1)
        mode: auto, exact or normal
        m: Bonferroni family size for ``p_adjusted``
        labels: Optional group names echoed in the result

    Raises:
        StatisticsError: Empty sample, or exact mode requested with ties
    """
    x, y = _as_array(a, "a"), _as_array(b, "b")
    if x.size == 0 or y.size == 0:
        raise StatisticsError(
            "Mann-Whitney needs two non-empty samples",
            details={"n_a": int(x.size), "n_b": int(y.size)},
        )

    combined = np.concatenate([x, y])
    has_ties = np.unique(combined).size < combined.size
    if mode == "exact" and has_ties:
        raise StatisticsError("Exact Mann-Whitney requires tie-free samples")
    exact = mode == "exact" or (
        mode == "auto" and min(x.size, y.size) <= EXACT_MAX_GROUP and not has_ties
    )

    z, u_a = mann_whitney_z(x, y, continuity=True)
    u = min(u_a, x.size * y.size - u_a)
    if exact:
        p = float(stats.mannwhitneyu(x, y, alternative="two-sided", method="exact").pvalue)
    elif z == 0.0:
        p = 1.0
    else:
        p = float(2.0 * stats.norm.sf(abs(z)))
    p = min(1.0, max(0.0, p))

    n = int(combined.size)
    r, label = effect_size(z, n)
    return TestResult(
        test="mann_whitney",
        statistic=float(u),
        z=z,
        p_raw=p,
        p_adjusted=bonferroni(p, m),
        m=m,
        effect_r=r,
        effect_label=label,
        method="exact" if exact else "normal_approx",
        n=n,
        groups=list(labels) if labels else [],
    )


def describe(values: Sequence[float]) -> DescriptiveStats:
    """Mean, sample SD and type-7 quartiles of a non-empty sample."""
    array = _as_array(values, "values")
    if array.size == 0:
        raise StatisticsError("Cannot describe an empty sample")
    q1, median, q3 = np.percentile(array, [25, 50, 75])
    return DescriptiveStats(
        n=int(array.size),
        mean=float(np.mean(array)),
        sd=float(np.std(array, ddof=1)) if array.size > 1 else 0.0,
        median=float(median),
        q1=float(q1),
        q3=float(q3),
        min=float(np.min(array)),
        max=float(np.max(array)),
    )


def box_plot(values: Sequence[float], group: str) -> BoxPlotSummary:
    """Five-number summary with 1.5 IQR Tukey fences, whiskers and outliers."""
    summary = describe(values)
    array = _as_array(values, "values")
    iqr = summary.q3 - summary.q1
    lower = summary.q1 - TUKEY_K * iqr
    upper = summary.q3 + TUKEY_K * iqr
    inside = array[(array >= lower) & (array <= upper)]
    outliers = np.sort(array[(array < lower) | (array > upper)])
    return BoxPlotSummary(
        group=group,
        n=summary.n,
        min=summary.min,
        q1=summary.q1,
        median=summary.median,
        q3=summary.q3,
        max=summary.max,
        lower_fence=float(lower),
        upper_fence=float(upper),
        whisker_low=float(np.min(inside)) if inside.size else summary.min,
        whisker_high=float(np.max(inside)) if inside.size else summary.max,
        outliers=[float(v) for v in outliers],
    )
