import pytest
from hypothesis import given, strategies as st

from consep.errors import WordParseError
from consep.words import (
    conjugate, cyclic_reduce, format_subgroup, format_word, inverse, is_reduced, multiply, parse_subgroup,
    parse_word, reduce_word, reduced_words,
)
from oracles import all_reduced_words, free_reduce

letters = st.integers(min_value=-3, max_value=3).filter(bool)
words = st.lists(letters, max_size=12).map(tuple)


@pytest.mark.parametrize("text, expected", [("aA", ""), ("abBA", ""), ("abA", "abA"), ("AaBb", "")])
def test_reduce_examples(text, expected):
    assert format_word(reduce_word(parse_word(text))) == expected


@given(words)
def test_reduce_matches_stack_oracle_and_is_idempotent(w):
    r = reduce_word(w)
    assert r == free_reduce(w)
    assert reduce_word(r) == r and is_reduced(r)


@given(words, words)
def test_inverse_cancels(u, v):
    assert multiply(u, inverse(u)) == ()
    assert inverse(multiply(u, v)) == multiply(inverse(v), inverse(u))


@given(words, words)
def test_conjugate_is_g_inverse_w_g(w, g):
    assert conjugate(w, g) == reduce_word(inverse(g) + w + g)


@given(words)
def test_cyclic_reduce_is_a_conjugate(w):
    c = cyclic_reduce(w)
    r = reduce_word(w)
    assert len(c) <= len(r)
    assert not c or c[0] != -c[-1]
    # same conjugacy class: r = u c u^-1 for the peeled prefix u
    k = (len(r) - len(c)) // 2
    assert multiply(r[:k], c, inverse(r[:k])) == r


@given(words)
def test_format_parse_roundtrip(w):
    w = reduce_word(w)
    assert parse_word(format_word(w)) == w


def test_large_rank_escapes():
    w = (27, -28, 1)
    text = format_word(w)
    assert text == "x27X28a"
    assert parse_word(text) == w


def test_parse_error_reports_position():
    with pytest.raises(WordParseError) as info:
        parse_subgroup("ab,a?b", 2)
    assert info.value.position == 4


def test_parse_rejects_letters_beyond_rank():
    with pytest.raises(WordParseError):
        parse_word("abc", 2)


def test_subgroup_text_drops_trivial_words():
    assert parse_subgroup("ab,aA,", 2) == [(1, 2)]
    assert format_subgroup([(1, 2), (-1, -1, 2)]) == "ab,AAb"


def test_reduced_words_enumeration_matches_brute_force():
    assert sorted(reduced_words(2, 4)) == sorted(all_reduced_words(2, 4))
    assert len(list(reduced_words(2, 3, min_length=3))) == 36
