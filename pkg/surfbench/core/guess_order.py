"""
Guessing-order scores.

A guess-prioritized brute force enumerates candidates in tiers: tier ``j``
holds the candidates that need exactly ``j`` substitutions of the observed
guess, each substituted position taking one of the ``P - 1`` other symbols and
each unobserved tail position (wildcard) taking any of ``P``. The expected rank
of the original inside that enumeration, relative to the full search space,
is the score: 0 means the guess found the password immediately, 1 means the
guess did not help.

Pool-based enumeration trusts the guessed symbol multiset, position-based
enumeration trusts the guessed positions.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from surfbench.core.scheme import PasswordSeq, Scheme, entropy_bits, effective_pool
from surfbench.exceptions import GuessOrderError, MetricError

Strategy = Literal["pool", "position"]
RankVariant = Literal["log", "linear"]

RANK_MODEL_LABEL = "tier surrogate"


@dataclass(frozen=True)
class RankModel:
    """
    Tier model of one (original, guess) pair.

    Attributes:
        strategy: pool or position
        n: Original length
        w: Wildcard count, max(0, n - |g|)
        m_prime: Observed positions, n - w
        j_t: Tier holding the original
        pool_size: Per-position pool P
    """

    strategy: Strategy
    n: int
    w: int
    m_prime: int
    j_t: int
    pool_size: int

    def __post_init__(self) -> None:
        if self.pool_size < 2:
            raise GuessOrderError("Pool size must be at least 2", details={"pool_size": self.pool_size})
        if not (0 <= self.w <= self.n and self.m_prime == self.n - self.w):
            raise GuessOrderError(
                "Inconsistent wildcard count",
                details={"n": self.n, "w": self.w, "m_prime": self.m_prime},
            )
        if not 0 <= self.j_t <= self.m_prime:
            raise GuessOrderError(
                "Target tier out of range",
                details={"j_t": self.j_t, "m_prime": self.m_prime},
            )

    def tier_sizes(self) -> list[int]:
        """T(j) = C(m', j) * (P - 1)^j for j = 0..m', checked against P^m'."""
        sizes = [
            math.comb(self.m_prime, j) * (self.pool_size - 1) ** j for j in range(self.m_prime + 1)
        ]
        if sum(sizes) != self.pool_size**self.m_prime:
            raise GuessOrderError(
                "Tier sizes do not cover the observed search space",
                details={"pool_size": self.pool_size, "m_prime": self.m_prime},
            )
        return sizes

    @property
    def search_space(self) -> int:
        return self.pool_size**self.n

    def doubled_rank(self) -> int:
        """2R as an exact integer; R itself can be a half-integer."""
        sizes = self.tier_sizes()
        below = sum(sizes[: self.j_t])
        return self.pool_size**self.w * (2 * below + sizes[self.j_t] + 1)

    def rank(self) -> Fraction:
        return Fraction(self.doubled_rank(), 2)

    def score(self, variant: RankVariant = "log") -> float:
        doubled = self.doubled_rank()
        total = self.search_space
        if variant == "linear":
            return float(Fraction(doubled, 2 * total))
        if doubled == 2:
            return 0.0
        if doubled == 2 * total:
            return 1.0
        return (math.log2(doubled) - 1.0) / math.log2(total)


def _normalize(o: Sequence[Hashable], g: Sequence[Hashable]) -> tuple[int, int, Sequence[Hashable]]:
    n = len(o)
    if n == 0:
        raise MetricError("Original password must not be empty", details={"metric": "guess_order"})
    truncated = g[:n]
    w = n - len(truncated)
    return n, w, truncated


def rank_model(
    o: Sequence[Hashable],
    g: Sequence[Hashable],
    pool_size: int,
    strategy: Strategy,
) -> RankModel:
    """
    Build the tier model for an original/guess pair.

    The guess is tail-truncated to the original length; missing tail
    positions become wildcards.
    """
    n, w, truncated = _normalize(o, g)
    m_prime = n - w
    if strategy == "pool":
        overlap = sum((Counter(truncated) & Counter(o)).values())
        j_t = m_prime - overlap
    elif strategy == "position":
        j_t = sum(1 for i in range(m_prime) if truncated[i] != o[i])
    else:
        raise GuessOrderError(f"Unknown strategy '{strategy}'", details={"strategy": strategy})
    return RankModel(strategy=strategy, n=n, w=w, m_prime=m_prime, j_t=j_t, pool_size=pool_size)


def pool_guess_score(
    o: PasswordSeq, g: PasswordSeq, scheme: Scheme, variant: RankVariant = "log"
) -> float:
    """Pool-based guessing-order score (complementary)."""
    return rank_model(o.symbols, g.symbols, scheme.pool_size, "pool").score(variant)


def position_guess_score(
    o: PasswordSeq, g: PasswordSeq, scheme: Scheme, variant: RankVariant = "log"
) -> float:
    """Position-based guessing-order score (complementary)."""
    return rank_model(o.symbols, g.symbols, scheme.pool_size, "position").score(variant)


def entropy_drop_score(o: PasswordSeq, g: PasswordSeq, scheme: Scheme) -> float:
    """
    Relative entropy change from original to guess, clamped to [0, 1].

    Both sides use the effective pool of the categories they contain, so an
    exact guess scores 0; an original that spans every category is measured
    against the full pool. When both pools are equal the ratio reduces to the
    length ratio and is computed that way, so on single-category schemes it
    equals length_dif exactly.
    """
    n = o.length
    if n == 0:
        raise MetricError("Original password must not be empty", details={"metric": "entropy_drop"})
    original_pool = effective_pool(scheme, o)
    if g.length == 0 or effective_pool(scheme, g) == original_pool:
        return min(1.0, abs(g.length - n) / n)
    original_bits = entropy_bits(scheme, o, "guess")
    guess_bits = entropy_bits(scheme, g, "guess")
    if original_bits == 0.0:
        return 1.0
    return min(1.0, abs(original_bits - guess_bits) / original_bits)
