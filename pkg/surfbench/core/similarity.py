"""
Password characteristics and distance metrics.

Every metric compares an original sequence ``o`` with a guess ``g`` over a
common component alphabet and returns a score in [0, 1]. Sequences are any
indexable collections of hashable components: strings, tuples of symbols or
per-group projections.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Hashable, Sequence
from typing import Callable

from surfbench.exceptions import MetricError

Components = Sequence[Hashable]
SimilarityMetric = Callable[[Components, Components], float]

JARO_WINKLER_SCALING = 0.1
JARO_WINKLER_PREFIX_CAP = 4


def _require_original(o: Components, metric: str) -> None:
    if len(o) == 0:
        raise MetricError("Original password must not be empty", details={"metric": metric})


def _multiset_overlap(o: Components, g: Components) -> int:
    return sum((Counter(o) & Counter(g)).values())


def common_prefix_length(o: Components, g: Components) -> int:
    length = 0
    for a, b in zip(o, g):
        if a != b:
            break
        length += 1
    return length


def lcs_length(o: Components, g: Components) -> int:
    """Length of the longest common subsequence (two-row dynamic programming)."""
    if len(o) < len(g):
        o, g = g, o
    previous = [0] * (len(g) + 1)
    for a in o:
        current = [0] * (len(g) + 1)
        for j, b in enumerate(g, start=1):
            if a == b:
                current[j] = previous[j - 1] + 1
            else:
                current[j] = max(previous[j], current[j - 1])
        previous = current
    return previous[-1]


def edit_distance(o: Components, g: Components) -> int:
    """Levenshtein distance with unit insertion, deletion and substitution costs."""
    previous = list(range(len(g) + 1))
    for i, a in enumerate(o, start=1):
        current = [i] + [0] * len(g)
        for j, b in enumerate(g, start=1):
            current[j] = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (a != b),
            )
        previous = current
    return previous[-1]


# Password characteristics


def same_chars(o: Components, g: Components) -> float:
    """Share of the original's symbols present in the guess, order ignored (multiset)."""
    _require_original(o, "same_chars")
    return _multiset_overlap(o, g) / len(o)


def correct_first(o: Components, g: Components) -> float:
    """Share of the original covered by the longest correct prefix of the guess."""
    _require_original(o, "correct_first")
    return common_prefix_length(o, g) / len(o)


def right_spot(o: Components, g: Components) -> float:
    _require_original(o, "right_spot")
    return sum(1 for a, b in zip(o, g) if a == b) / len(o)


def lcs_ratio(o: Components, g: Components) -> float:
    _require_original(o, "lcs_ratio")
    return lcs_length(o, g) / len(o)


def dif_in_guess(o: Components, g: Components) -> float:
    """
    Share of the guess made of symbols that are not in the original (multiset difference).

    An empty guess scores 1.0.
    """
    if len(g) == 0:
        return 1.0
    extra = Counter(g) - Counter(o)
    return sum(extra.values()) / len(g)


def length_dif(o: Components, g: Components) -> float:
    _require_original(o, "length_dif")
    return min(1.0, abs(len(g) - len(o)) / len(o))


# Distance metrics


def jaccard(o: Components, g: Components) -> float:
    _require_original(o, "jaccard")
    a, b = set(o), set(g)
    if not b:
        return 0.0
    return len(a & b) / len(a | b)


def jaro(o: Components, g: Components) -> float:
    """Jaro similarity with half-counted transpositions."""
    _require_original(o, "jaro")
    if len(g) == 0:
        return 0.0

    window = max(max(len(o), len(g)) // 2 - 1, 0)
    o_matched = [False] * len(o)
    g_matched = [False] * len(g)
    matches = 0
    for i, a in enumerate(o):
        low = max(0, i - window)
        high = min(i + window + 1, len(g))
        for j in range(low, high):
            if not g_matched[j] and g[j] == a:
                o_matched[i] = g_matched[j] = True
                matches += 1
                break
    if matches == 0:
        return 0.0

    o_order = [a for a, hit in zip(o, o_matched) if hit]
    g_order = [b for b, hit in zip(g, g_matched) if hit]
    transpositions = sum(1 for a, b in zip(o_order, g_order) if a != b) / 2
    return (matches / len(o) + matches / len(g) + (matches - transpositions) / matches) / 3


def jaro_winkler(o: Components, g: Components) -> float:
    """Jaro similarity with the Winkler common-prefix boost (scaling 0.1, prefix up to 4)."""
    similarity = jaro(o, g)
    prefix = min(common_prefix_length(o, g), JARO_WINKLER_PREFIX_CAP)
    return min(1.0, similarity + prefix * JARO_WINKLER_SCALING * (1.0 - similarity))


def cosine(o: Components, g: Components) -> float:
    _require_original(o, "cosine")
    if len(g) == 0:
        return 0.0
    a, b = Counter(o), Counter(g)
    dot = sum(count * b[symbol] for symbol, count in a.items())
    norm = math.sqrt(sum(c * c for c in a.values())) * math.sqrt(sum(c * c for c in b.values()))
    return min(1.0, dot / norm)


def levenshtein_sim(o: Components, g: Components) -> float:
    _require_original(o, "levenshtein_sim")
    return 1.0 - edit_distance(o, g) / max(len(o), len(g))


def ngrams(sequence: Components, n: int) -> list[tuple[Hashable, ...]]:
    return [tuple(sequence[i : i + n]) for i in range(len(sequence) - n + 1)]


def ngram_dice(o: Components, g: Components, n: int = 2) -> float:
    """
    Dice coefficient over contiguous n-gram multisets.

    Returns 0 when either sequence is shorter than ``n``.
    """
    _require_original(o, "ngram_dice")
    if n < 1:
        raise MetricError("n-gram length must be positive", details={"n": n})
    if len(o) < n or len(g) < n:
        return 0.0
    a, b = ngrams(o, n), ngrams(g, n)
    return 2 * _multiset_overlap(a, b) / (len(a) + len(b))
