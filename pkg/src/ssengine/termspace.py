"""Search terms as ordered word sequences, and the algebra over them.

A term of k words has 2^k - 1 non-empty word subsets; under a uniform mass
each subset carries probability 1/(2^k - 1). Relations between terms compare
their word *sets* (duplicates collapsed), while the word *sequence* is kept
for phrase matching.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .corpus import NormalizerConfig, Word, tokenize
from .errors import EmptyTermError, TermSizeError

# Subset enumeration is exponential; 20 words caps it near one million
# sub-terms, plenty for name-like search terms.
K_MAX = 20


@dataclass(frozen=True)
class Term:
    words: tuple[Word, ...]

    def __post_init__(self):
        if not self.words:
            raise EmptyTermError("a term needs at least one word")
        if len(self.words) > K_MAX:
            raise TermSizeError(
                f"term has {len(self.words)} words; the cap is {K_MAX}"
            )

    @property
    def k(self) -> int:
        return len(self.words)

    @property
    def word_set(self) -> frozenset[Word]:
        return frozenset(self.words)

    @property
    def text(self) -> str:
        return " ".join(self.words)


class TermRelation(enum.Enum):
    EQUAL = "equal"
    SUBSET = "subset"
    SUPERSET = "superset"
    OVERLAP = "overlap"
    DISJOINT = "disjoint"


def parse_term(text: str, config: NormalizerConfig = NormalizerConfig()) -> Term:
    words = tokenize(text, config)
    if not words:
        raise EmptyTermError(f"term text {text!r} normalizes to no words")
    return Term(tuple(words))


def enumerate_subsets(term: Term) -> list[Term]:
    """All 2^k - 1 non-empty sub-terms, original word order preserved.

    Ordered ascending by subset size, then lexicographically by the member
    indices within each size.
    """
    out: list[Term] = []
    indices = range(term.k)
    for size in range(1, term.k + 1):
        for combo in combinations(indices, size):
            out.append(Term(tuple(term.words[i] for i in combo)))
    return out


def subset_probability(term: Term) -> Fraction:
    """Uniform mass over the non-empty word subsets: exactly 1/(2^k - 1)."""
    return Fraction(1, 2**term.k - 1)


def term_relation(a: Term, b: Term) -> TermRelation:
    sa, sb = a.word_set, b.word_set
    if sa == sb:
        return TermRelation.EQUAL
    if sa < sb:
        return TermRelation.SUBSET
    if sa > sb:
        return TermRelation.SUPERSET
    if sa & sb:
        return TermRelation.OVERLAP
    return TermRelation.DISJOINT
