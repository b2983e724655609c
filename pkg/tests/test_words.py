from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scottbench.errors import InputError
from scottbench.words import (
    commutator,
    concat,
    format_word,
    from_letters,
    inverse,
    length,
    parse_word,
    power,
    reduce_syllables,
    reduced_words,
    to_letters,
)

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


def free_reduce(seq):
    out = []
    for c in seq:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return out


@given(letters)
def test_from_letters_is_free_reduction(seq):
    assert to_letters(from_letters(seq)) == free_reduce(seq)


@given(letters)
def test_word_times_inverse_is_empty(seq):
    w = from_letters(seq)
    assert concat(w, inverse(w)) == ()
    assert inverse(inverse(w)) == w


@given(letters, letters, letters)
def test_concat_associative(a, b, c):
    a, b, c = from_letters(a), from_letters(b), from_letters(c)
    assert concat(concat(a, b), c) == concat(a, concat(b, c))


def test_syllables_merge_and_cancel():
    assert reduce_syllables([(0, 2), (0, -2), (1, 1)]) == ((1, 1),)
    assert reduce_syllables([(0, 1), (0, 2)]) == ((0, 3),)
    assert length(((0, 3), (1, -2))) == 5
    assert power(((0, 1), (1, 1)), -1) == ((1, -1), (0, -1))
    assert commutator(((0, 1),), ((1, 1),)) == ((0, 1), (1, 1), (0, -1), (1, -1))


def test_parse_and_format():
    names = ("a", "t")
    w = parse_word("a t^-2 a^3", names)
    assert w == ((0, 1), (1, -2), (0, 3))
    assert format_word(w, names) == "a t^-2 a^3"
    assert parse_word("1", names) == ()
    assert parse_word("b", names, {"b": "t"}) == ((1, 1),)
    with pytest.raises(InputError):
        parse_word("q", names)


def test_reduced_words_length_lex_and_distinct():
    rw = reduced_words(2)
    first = [rw[i] for i in range(1 + 4 + 12 + 36)]
    assert first[0] == ()
    assert len(set(first)) == len(first)
    assert [length(w) for w in first] == sorted(length(w) for w in first)
    assert all(to_letters(w) == free_reduce(to_letters(w)) for w in first)
