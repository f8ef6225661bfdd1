import itertools
import math
from fractions import Fraction

import pytest

from surfbench.core.guess_order import (
    RankModel,
    entropy_drop_score,
    pool_guess_score,
    position_guess_score,
    rank_model,
)
from surfbench.core.scheme import decode
from surfbench.core.similarity import length_dif
from surfbench.exceptions import GuessOrderError, MetricError
from tests.oracle import (
    OracleBudget,
    OracleBudgetExceeded,
    brute_tier_index,
    brute_tier_sizes,
)


def test_pool_permutation_is_found_first():
    model = rank_model("ab", "ba", 3, "pool")

    assert model.j_t == 0
    assert model.rank() == 1
    assert model.score("log") == 0.0


def test_pool_disjoint_guess():
    model = rank_model("ab", "cc", 3, "pool")

    assert model.j_t == 2
    assert model.rank() == Fraction(15, 2)
    assert model.score("log") == pytest.approx(math.log2(7.5) / math.log2(9), abs=1e-12)
    assert model.score("log") == pytest.approx(0.9170, abs=1e-4)
    assert model.score("linear") == pytest.approx(15 / 18)


def test_pool_short_guess_uses_wildcards():
    model = rank_model("ab", "a", 3, "pool")

    assert (model.w, model.m_prime, model.j_t) == (1, 1, 0)
    assert model.rank() == 3
    assert model.score("log") == pytest.approx(0.5, abs=1e-12)


def test_position_exact_match():
    model = rank_model("ab", "ab", 3, "position")

    assert model.rank() == 1
    assert model.score() == 0.0


def test_position_swapped_guess():
    model = rank_model("ab", "ba", 3, "position")

    assert model.j_t == 2
    assert model.rank() == Fraction(15, 2)
    assert model.score() == pytest.approx(0.9170, abs=1e-4)


def test_position_one_substitution():
    # tier 0 holds 1 candidate, tier 1 holds C(2,1) * 2 = 4
    model = rank_model("ab", "ac", 3, "position")

    assert model.tier_sizes() == [1, 4, 4]
    assert model.rank() == Fraction(7, 2)
    assert model.score() == pytest.approx(math.log2(3.5) / math.log2(9), abs=1e-12)
    assert model.score() == pytest.approx(0.5702, abs=1e-4)


def test_empty_guess_scores_one():
    for strategy in ("pool", "position"):
        model = rank_model("abc", "", 5, strategy)
        assert model.score("log") == 1.0
        assert model.score("linear") == 1.0


def test_long_guess_is_truncated():
    assert rank_model("ab", "abzz", 3, "position").j_t == 0
    assert rank_model("ab", "bazz", 3, "pool").j_t == 0


def test_empty_original_is_rejected():
    with pytest.raises(MetricError):
        rank_model("", "ab", 3, "pool")


def test_rank_model_validates_fields():
    with pytest.raises(GuessOrderError) as exc_info:
        RankModel(strategy="pool", n=2, w=0, m_prime=2, j_t=3, pool_size=3)

    assert exc_info.value.details["j_t"] == 3

    with pytest.raises(GuessOrderError):
        RankModel(strategy="pool", n=2, w=0, m_prime=2, j_t=0, pool_size=1)


def test_unknown_strategy():
    with pytest.raises(GuessOrderError):
        rank_model("ab", "ab", 3, "random")


@pytest.mark.parametrize("pool_size", [3, 10, 95, 768])
def test_tier_sizes_cover_search_space(pool_size):
    for m_prime in range(22):
        model = RankModel(
            strategy="position", n=m_prime, w=0, m_prime=m_prime, j_t=0, pool_size=pool_size
        )
        assert sum(model.tier_sizes()) == pool_size**m_prime


def test_big_integer_capacity():
    assert 95**11 > 10**21
    model = rank_model(tuple(range(11)), tuple(range(100, 111)), 95, "pool")

    assert model.j_t == 11
    assert model.search_space == 95**11
    assert model.doubled_rank() == 2 * 95**11 - 94**11 + 1
    assert 0.98 < model.score() < 1.0


def _words(alphabet, max_length, min_length=0):
    for length in range(min_length, max_length + 1):
        yield from itertools.product(alphabet, repeat=length)


@pytest.mark.parametrize("strategy", ["pool", "position"])
def test_tier_index_matches_enumeration(strategy):
    for pool_size in (2, 3, 4):
        alphabet = "abcd"[:pool_size]
        for o in _words(alphabet, 3, min_length=1):
            for g in _words(alphabet, len(o) + 1):
                expected = brute_tier_index(o, g, alphabet, strategy)
                assert rank_model(o, g, pool_size, strategy).j_t == expected, (o, g)


@pytest.mark.slow
@pytest.mark.parametrize("pool_size", [2, 3, 4])
@pytest.mark.parametrize("strategy", ["pool", "position"])
def test_tier_index_matches_enumeration_up_to_length_four(strategy, pool_size):
    alphabet = "abcd"[:pool_size]
    for o in _words(alphabet, 4, min_length=4):
        for g in _words(alphabet, len(o) + 1):
            assert rank_model(o, g, pool_size, strategy).j_t == brute_tier_index(o, g, alphabet, strategy), (o, g)


def test_tier_sizes_match_enumeration():
    for pool_size in (2, 3, 4):
        alphabet = "abcd"[:pool_size]
        for m_prime in range(5):
            guess = alphabet[0] * m_prime
            model = RankModel(
                strategy="position", n=m_prime, w=0, m_prime=m_prime, j_t=0, pool_size=pool_size
            )
            assert model.tier_sizes() == brute_tier_sizes(guess, alphabet)


def test_oracle_examples_and_budget():
    assert brute_tier_index("ab", "ba", "abc", "pool") == 0
    assert brute_tier_index("ab", "ba", "abc", "position") == 2
    assert brute_tier_index("ab", "ab", "abc", "pool") == 0

    with pytest.raises(OracleBudgetExceeded):
        brute_tier_index("a" * 10, "a", "abcdefghij", "pool", OracleBudget(max_space=1000))


def test_scheme_scores_use_pool_size(assoc):
    o = decode(assoc, "#1 #2")
    g = decode(assoc, "#2 #1")

    assert pool_guess_score(o, g, assoc) == 0.0
    # tiers 1, 18, 81 over P = 10
    assert position_guess_score(o, g, assoc) == pytest.approx(math.log2(60) / math.log2(100))


def test_entropy_drop_single_pool_equals_length_dif(gcps):
    o = decode(gcps, "W:N:f3 B:Q:d8 W:P:e4 B:K:g8 W:R:a1 B:B:c5 W:K:e1")
    g = decode(gcps, "W:N:f3 B:Q:d8 W:P:e4 B:K:g8 W:R:a1")

    assert entropy_drop_score(o, g, gcps) == pytest.approx(2 / 7)
    assert entropy_drop_score(o, g, gcps) == length_dif(o.symbols, g.symbols)


def test_entropy_drop_textual_category_loss(textual):
    o = decode(textual, "Tr0ub4dor&3")
    g = decode(textual, "troubado")

    expected = (11 * math.log2(95) - 8 * math.log2(26)) / (11 * math.log2(95))
    assert entropy_drop_score(o, g, textual) == pytest.approx(expected)
    assert entropy_drop_score(o, g, textual) == pytest.approx(0.4797, abs=1e-4)


def test_entropy_drop_identity(textual):
    o = decode(textual, "Ab1")

    assert entropy_drop_score(o, o, textual) == 0.0


def test_entropy_drop_empty_guess(textual):
    o = decode(textual, "Ab1")

    assert entropy_drop_score(o, decode(textual, ""), textual) == 1.0
