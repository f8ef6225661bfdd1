import itertools

import pytest

from surfbench.core.similarity import (
    cosine,
    correct_first,
    dif_in_guess,
    edit_distance,
    jaccard,
    jaro,
    jaro_winkler,
    lcs_length,
    lcs_ratio,
    length_dif,
    levenshtein_sim,
    ngram_dice,
    right_spot,
    same_chars,
)
from surfbench.exceptions import MetricError
from tests.oracle import brute_lcs, brute_levenshtein


@pytest.mark.parametrize(
    ("metric", "o", "g", "expected"),
    [
        (same_chars, "abca", "abd", 0.5),
        (same_chars, "abca", "abca", 1.0),
        (same_chars, "abca", "", 0.0),
        (correct_first, "abcd", "abxd", 0.5),
        (correct_first, "abcd", "xbcd", 0.0),
        (correct_first, "abcd", "abcd", 1.0),
        (right_spot, "abcd", "adcb", 0.5),
        (right_spot, "abcd", "abcd", 1.0),
        (right_spot, "abcd", "", 0.0),
        (lcs_ratio, "abcd", "acd", 0.75),
        (lcs_ratio, "abcd", "abcd", 1.0),
        (lcs_ratio, "abcd", "xyz", 0.0),
        (dif_in_guess, "abcd", "abxy", 0.5),
        (dif_in_guess, "abcd", "abcd", 0.0),
        (dif_in_guess, "abcd", "xy", 1.0),
        (dif_in_guess, "abcd", "", 1.0),
        (length_dif, "a" * 11, "a" * 9, 2 / 11),
        (length_dif, "abc", "xyz", 0.0),
        (length_dif, "a" * 11, "a" * 24, 1.0),
        (jaccard, "aab", "abc", 2 / 3),
        (jaccard, "abc", "abc", 1.0),
        (jaccard, "abc", "xyz", 0.0),
        (jaro_winkler, "MARTHA", "MARHTA", 0.9611),
        (jaro_winkler, "MARTHA", "MARTHA", 1.0),
        (jaro_winkler, "abc", "xyz", 0.0),
        (cosine, "aa", "ab", 0.7071),
        (cosine, "abc", "abc", 1.0),
        (cosine, "abc", "xyz", 0.0),
        (levenshtein_sim, "kitten", "sitting", 1 - 3 / 7),
        (levenshtein_sim, "kitten", "kitten", 1.0),
        (levenshtein_sim, "kitten", "", 0.0),
        (ngram_dice, "abcd", "abce", 2 / 3),
        (ngram_dice, "abcd", "abcd", 1.0),
        (ngram_dice, "abcd", "", 0.0),
    ],
)
def test_metric_examples(metric, o, g, expected):
    assert metric(o, g) == pytest.approx(expected, abs=1e-4)


def test_jaro_counts_half_transpositions():
    assert jaro("MARTHA", "MARHTA") == pytest.approx(0.9444, abs=1e-4)


def test_jaro_winkler_prefix_is_capped():
    # prefix of 6 counts as 4
    o, g = "abcdefgh", "abcdefxy"
    expected = jaro(o, g) + 4 * 0.1 * (1 - jaro(o, g))
    assert jaro_winkler(o, g) == pytest.approx(expected)


def test_ngram_dice_other_lengths():
    assert ngram_dice("abcd", "abce", n=1) == pytest.approx(0.75)
    assert ngram_dice("abcd", "abce", n=3) == pytest.approx(0.5)
    assert ngram_dice("a", "a", n=2) == 0.0


def test_ngram_dice_rejects_zero_length():
    with pytest.raises(MetricError) as exc_info:
        ngram_dice("ab", "ab", n=0)

    assert exc_info.value.details["n"] == 0


@pytest.mark.parametrize(
    "metric",
    [same_chars, correct_first, right_spot, lcs_ratio, length_dif, jaccard, jaro_winkler, cosine, levenshtein_sim, ngram_dice],
)
def test_empty_original_is_rejected(metric):
    with pytest.raises(MetricError) as exc_info:
        metric("", "abc")

    assert "metric" in exc_info.value.details


def test_metrics_accept_symbol_tuples():
    o = [("a", "shift"), ("b", "none")]
    g = [("a", "none"), ("b", "none")]

    assert same_chars(o, g) == 0.5
    assert right_spot(o, g) == 0.5


def _strings(max_length):
    for length in range(max_length + 1):
        for chars in itertools.product("abc", repeat=length):
            yield "".join(chars)


def test_lcs_and_edit_distance_match_recursive_oracle():
    strings = list(_strings(5))
    for o in strings:
        if not o:
            continue
        for g in strings:
            assert lcs_length(o, g) == brute_lcs(o, g), (o, g)
            assert edit_distance(o, g) == brute_levenshtein(o, g), (o, g)
            assert lcs_ratio(o, g) == brute_lcs(o, g) / len(o)
            assert levenshtein_sim(o, g) == 1 - brute_levenshtein(o, g) / max(len(o), len(g))


def test_oracle_examples():
    assert brute_lcs("abcd", "acd") == 3
    assert brute_levenshtein("kitten", "sitting") == 3
    assert brute_lcs("abc", "abc") == 3
    assert brute_levenshtein("abc", "abc") == 0
