from fractions import Fraction
from itertools import chain, combinations

import pytest
from hypothesis import given, strategies as st

from ssengine.errors import EmptyTermError, TermSizeError
from ssengine.termspace import (
    K_MAX,
    Term,
    TermRelation,
    enumerate_subsets,
    parse_term,
    subset_probability,
    term_relation,
)


def brute_force_subsets(words):
    """Independent enumeration via itertools powerset, minus the empty set."""
    idx = range(len(words))
    return [
        tuple(words[i] for i in combo)
        for combo in chain.from_iterable(
            combinations(idx, r) for r in range(1, len(words) + 1)
        )
    ]


class TestParseTerm:
    def test_four_word_name(self):
        t = parse_term("Mahyuddin Khairuddin Matyuso Nasution")
        assert t.k == 4
        assert t.words == ("mahyuddin", "khairuddin", "matyuso", "nasution")

    def test_single_word(self):
        assert parse_term("network").k == 1

    def test_all_stripped(self):
        with pytest.raises(EmptyTermError):
            parse_term("!!!")

    def test_too_long(self):
        with pytest.raises(TermSizeError):
            parse_term(" ".join(f"w{i}" for i in range(K_MAX + 1)))


class TestEnumerateSubsets:
    def test_k4_count(self):
        subs = enumerate_subsets(parse_term("w1 w2 w3 w4"))
        assert len(subs) == 15

    def test_k1_identity(self):
        t = parse_term("solo")
        assert enumerate_subsets(t) == [t]

    def test_k2_order(self):
        subs = enumerate_subsets(Term(("a", "b")))
        assert [s.words for s in subs] == [("a",), ("b",), ("a", "b")]

    def test_word_order_preserved(self):
        subs = enumerate_subsets(Term(("z", "a", "m")))
        assert Term(("z", "a")) in subs
        assert Term(("z", "m")) in subs
        assert Term(("a", "m")) in subs

    @pytest.mark.parametrize("k", range(1, 13))
    def test_count_is_2k_minus_1(self, k):
        t = Term(tuple(f"w{i}" for i in range(k)))
        assert len(enumerate_subsets(t)) == 2**k - 1

    def test_matches_brute_force(self):
        words = ("a", "b", "c", "d", "e")
        got = [s.words for s in enumerate_subsets(Term(words))]
        # Frozen from the independent powerset enumeration; sorted by size
        # then index order in both paths.
        expected = sorted(brute_force_subsets(words),
                          key=lambda s: (len(s), [words.index(w) for w in s]))
        assert got == expected
        assert len(set(got)) == 31


class TestSubsetProbability:
    def test_k4(self):
        assert subset_probability(parse_term("a b c d")) == Fraction(1, 15)

    def test_k1(self):
        assert subset_probability(parse_term("a")) == 1

    def test_k10(self):
        t = Term(tuple(f"w{i}" for i in range(10)))
        assert subset_probability(t) == Fraction(1, 1023)

    @pytest.mark.parametrize("k", range(1, 13))
    def test_uniform_masses_sum_to_one(self, k):
        t = Term(tuple(f"w{i}" for i in range(k)))
        subs = enumerate_subsets(t)
        assert sum(subset_probability(t) for _ in subs) == Fraction(1)


class TestTermRelation:
    def test_subset(self):
        a = Term(("mahyuddin", "nasution"))
        b = Term(("mahyuddin", "k", "m", "nasution"))
        assert term_relation(a, b) is TermRelation.SUBSET

    def test_disjoint(self):
        assert term_relation(Term(("a", "b")), Term(("c", "d"))) is TermRelation.DISJOINT

    def test_overlap(self):
        assert term_relation(Term(("a", "b")), Term(("b", "c"))) is TermRelation.OVERLAP

    def test_equal_ignores_order_and_duplicates(self):
        assert term_relation(Term(("a", "b", "a")), Term(("b", "a"))) is TermRelation.EQUAL

    words = st.lists(
        st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=5
    ).map(tuple)

    @given(words, words)
    def test_swap_symmetry(self, wa, wb):
        a, b = Term(wa), Term(wb)
        fwd, rev = term_relation(a, b), term_relation(b, a)
        flip = {
            TermRelation.SUBSET: TermRelation.SUPERSET,
            TermRelation.SUPERSET: TermRelation.SUBSET,
        }
        assert rev is flip.get(fwd, fwd)

    @given(words, words)
    def test_exactly_one_variant(self, wa, wb):
        sa, sb = set(wa), set(wb)
        rel = term_relation(Term(wa), Term(wb))
        expected = (
            TermRelation.EQUAL if sa == sb
            else TermRelation.SUBSET if sa < sb
            else TermRelation.SUPERSET if sa > sb
            else TermRelation.OVERLAP if sa & sb
            else TermRelation.DISJOINT
        )
        assert rel is expected
