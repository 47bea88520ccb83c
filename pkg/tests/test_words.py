import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rsalg.errors import (
    AlphabetMismatchError,
    InvalidDecompositionError,
    ParseError,
    ResourceLimitError,
)
from rsalg.words import (
    Ordering,
    Variable,
    compare,
    enumerate_good,
    enumerate_good_with_letter,
    is_good,
    letter_count,
    parse_word,
    r_compose,
    r_decompose,
    var,
)

from oracles import all_words, is_good_by_definition


def W(text, n=2):
    return parse_word(text, n)


x1, x2 = var(1, 2), var(2, 2)


def compare_by_definition(u, v):
    if u.degree != v.degree:
        return -1 if u.degree < v.degree else 1
    if u.degree == 1:
        return (u.index > v.index) - (u.index < v.index)
    c = compare_by_definition(u.left, v.left)
    return c if c else compare_by_definition(u.right, v.right)


WORDS_UPTO_6 = [w for d in range(1, 7) for w in all_words(2, d)]


class TestCompare:
    def test_examples(self):
        assert compare(x1, x2) is Ordering.LESS
        assert compare(x2, x1 * x1) is Ordering.LESS
        assert compare((x1 * x2) * x1, x1 * (x2 * x1)) is Ordering.GREATER
        assert compare(x1 * x2, x1 * x2) is Ordering.EQUAL

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            compare(var(1, 1), var(1, 2))
        with pytest.raises(AlphabetMismatchError):
            var(1, 1) < var(1, 2)

    def test_keys_are_injective(self):
        assert len({w.key for w in WORDS_UPTO_6}) == len(WORDS_UPTO_6)
        assert len(set(WORDS_UPTO_6)) == len(WORDS_UPTO_6)

    def test_agrees_with_definition_all_pairs_upto_4(self):
        small = [w for w in WORDS_UPTO_6 if w.degree <= 4]
        for u, v in itertools.product(small, repeat=2):
            assert int(compare(u, v)) == compare_by_definition(u, v)

    def test_sorted_chain_upto_6(self):
        chain = sorted(WORDS_UPTO_6)
        for u, v in zip(chain, chain[1:]):
            assert compare_by_definition(u, v) == -1
            assert compare(u, v) is Ordering.LESS and compare(v, u) is Ordering.GREATER

    def test_random_triples_transitive(self):
        rng = random.Random(3)
        for _ in range(5000):
            a, b, c = (rng.choice(WORDS_UPTO_6) for _ in range(3))
            if a < b and b < c:
                assert a < c
            assert (a < b) + (a == b) + (a > b) == 1


class TestIsGood:
    def test_examples(self):
        assert not is_good((x1 * x2) * x1)
        assert is_good((x1 * x1) * x2)
        assert is_good(x1 * (x2 * x1))

    def test_agrees_with_definition_upto_6(self):
        for w in WORDS_UPTO_6:
            assert is_good(w) == is_good_by_definition(w)

    def test_two_characterisations_agree(self):
        for w in WORDS_UPTO_6:
            try:
                r_decompose(w)
                ok = True
            except InvalidDecompositionError:
                ok = False
            assert ok == is_good(w), w


class TestRDecomposition:
    def test_examples(self):
        head, tail = r_decompose((x1 * x1) * x2)
        assert head == Variable(1, 2) and tail == (x1, x2)
        assert r_decompose(x1 * (x1 * x2)).tail == (x1 * x2,)
        assert r_decompose(x1).tail == ()

    def test_compose_examples(self):
        assert r_compose(Variable(1, 2), [x1, x2]) == (x1 * x1) * x2
        assert r_compose(x2, []) == x2
        with pytest.raises(InvalidDecompositionError):
            r_compose(x1, [x2, x1])

    def test_round_trip_upto_6(self):
        for d in range(1, 7):
            for g in enumerate_good(2, d):
                head, tail = r_decompose(g)
                assert list(tail) == sorted(tail)
                assert r_compose(head, tail) == g


class TestEnumerate:
    def test_small(self):
        assert enumerate_good(2, 1) == [x1, x2]
        y = var(1, 1)
        assert set(enumerate_good(1, 3)) == {y * (y * y), (y * y) * y}

    def test_one_letter_counts(self):
        assert [len(enumerate_good(1, d)) for d in range(1, 7)] == [1, 1, 2, 4, 9, 20]

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("d", range(1, 7))
    def test_matches_filter_oracle(self, n, d):
        got = enumerate_good(n, d)
        assert got == sorted(got)
        assert got == sorted(w for w in all_words(n, d) if is_good(w))

    def test_letter_constrained(self):
        for d in range(1, 6):
            got = enumerate_good_with_letter(3, d, 3, 1)
            expect = [w for w in enumerate_good(3, d) if letter_count(w, 3) == 1]
            assert got == expect

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_good(2, 6, cap=100)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("RSALG_ENUM_CAP", "50")
        with pytest.raises(ResourceLimitError):
            enumerate_good(2, 5)


class TestParseWord:
    def test_round_trip(self):
        for w in WORDS_UPTO_6[::37]:
            assert parse_word(str(w), 2) == w

    @pytest.mark.parametrize("text", ["x3", "(x1*x2", "x1*x2", "(x1 x2)", ""])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_word(text, 2)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_order_is_total_on_random_words(data):
    u = data.draw(st.sampled_from(WORDS_UPTO_6))
    v = data.draw(st.sampled_from(WORDS_UPTO_6))
    assert compare(u, v) == Ordering(-int(compare(v, u)))
    assert (compare(u, v) is Ordering.EQUAL) == (u == v)
