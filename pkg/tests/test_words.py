import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from squarezero.words import (
    EMPTY_WORD,
    CyclicalWord,
    WordParseError,
    canonicalize,
    enumerate_necklaces,
    necklace_count,
    parse_word,
    rotate,
    rotations,
    word_period,
)

words = st.lists(st.integers(min_value=1, max_value=3), max_size=10).map(tuple)


def test_canonicalize_examples():
    assert canonicalize((2, 1)) == CyclicalWord((1, 2), 2)
    assert canonicalize((1, 2, 1, 2)) == CyclicalWord((1, 2, 1, 2), 2)
    assert canonicalize(()) == EMPTY_WORD
    assert str(EMPTY_WORD) == "[0]" and EMPTY_WORD.period == 1


def test_rotations_examples():
    assert rotations((1, 2)) == [(1, 2), (2, 1)]
    assert rotations((1, 1)) == [(1, 1)]
    assert len(rotations((1, 1, 2))) == 3


def test_rotate_moves_last_letters_to_front():
    assert rotate((1, 2, 3)) == (3, 1, 2)
    assert rotate((1, 2, 3), 2) == (2, 3, 1)
    assert rotate((), 5) == ()


def test_enumeration_examples():
    assert len(enumerate_necklaces(2, 3)) == 4
    assert len(enumerate_necklaces(2, 4)) == 6
    (w,) = enumerate_necklaces(1, 5)
    assert w.period == 1


@given(words, st.integers(min_value=0, max_value=20))
def test_canonicalize_constant_on_orbits(w, k):
    assert canonicalize(w) == canonicalize(rotate(w, k))


@given(words)
def test_period_divides_length(w):
    c = canonicalize(w)
    if w:
        assert len(w) % c.period == 0
        assert len(set(rotations(w))) == c.period == word_period(w)
        assert c.representative == min(rotations(w))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_periods_partition_all_words(r):
    for m in range(0, 9):
        necklaces = enumerate_necklaces(r, m)
        assert sum(w.period for w in necklaces) == r ** m
        assert len(necklaces) == necklace_count(r, m)


@pytest.mark.parametrize("r,m", [(2, 5), (3, 4), (3, 6)])
def test_enumeration_against_brute_force(r, m):
    orbits = {frozenset(rotations(w)) for w in itertools.product(range(1, r + 1), repeat=m)}
    assert sorted(min(o) for o in orbits) == [w.representative for w in enumerate_necklaces(r, m)]


def test_parse_word():
    assert parse_word("1,2,1") == (1, 2, 1)
    assert parse_word(" 2 , 3") == (2, 3)
    assert parse_word("") == ()


@pytest.mark.parametrize("text,r,position", [("1,a", None, 2), ("1,3", 2, 2), ("0", None, 0), ("1,,2", None, 2)])
def test_parse_word_errors(text, r, position):
    with pytest.raises(WordParseError) as info:
        parse_word(text, r)
    assert info.value.position == position


def test_letter_range_checked():
    with pytest.raises(ValueError):
        canonicalize((1, 4), r=3)
    with pytest.raises(ValueError):
        rotations(())


def test_spelled_and_str():
    w = canonicalize((2, 1, 1))
    assert w.spelled() == "1,1,2"
    assert str(w) == "[x1,x1,x2]"
    assert w.rotations() == [(1, 1, 2), (2, 1, 1), (1, 2, 1)]
