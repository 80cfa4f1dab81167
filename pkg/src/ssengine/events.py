"""Event spaces: which documents match a term, and with what probability.

A query is one term plus a matching mode. CONTAINS_ALL admits a document if
every word of the term occurs anywhere in it; PHRASE requires the words to
appear consecutively in order. The phrase event is always a subset of the
conjunctive one. Probabilities over the document universe are exact
rationals: |matching docs| / |all docs|.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import UndefinedProbabilityError, UniverseMismatchError
from .index import InvertedIndex, postings_lookup
from .termspace import Term


class MatchMode(enum.Enum):
    CONTAINS_ALL = "contains"
    PHRASE = "phrase"


class SetOp(enum.Enum):
    UNION = "union"
    INTERSECT = "intersect"
    DIFFERENCE = "difference"


@dataclass(frozen=True)
class Query:
    term: Term
    mode: MatchMode = MatchMode.CONTAINS_ALL


@dataclass(frozen=True)
class EventSpace:
    """A sorted, duplicate-free document-id set over a fixed universe.

    ``descriptor`` is the originating term text, or a composite expression
    for results of set operations (a union of terms is not itself a term).
    """

    descriptor: str
    mode: Optional[MatchMode]
    doc_ids: tuple[int, ...]
    universe_size: int


def _contains_all(index: InvertedIndex, term: Term) -> set[int]:
    words = sorted(term.word_set, key=lambda w: len(postings_lookup(index, w)))
    docs: Optional[set[int]] = None
    for w in words:
        plist = postings_lookup(index, w)
        if not plist.entries:
            return set()
        ids = set(plist.doc_ids())
        docs = ids if docs is None else docs & ids
        if not docs:
            return set()
    return docs or set()


def _phrase(index: InvertedIndex, term: Term) -> set[int]:
    # Align each word's positions back to where the phrase would start.
    plists = [postings_lookup(index, w) for w in term.words]
    if any(not p.entries for p in plists):
        return set()
    candidates = set(plists[0].doc_ids())
    for p in plists[1:]:
        candidates &= set(p.doc_ids())
        if not candidates:
            return set()
    by_word = [
        {e.doc_id: e.positions for e in p.entries} for p in plists
    ]
    matches = set()
    for doc in candidates:
        starts = set(by_word[0][doc])
        for offset, positions in enumerate(by_word[1:], start=1):
            starts &= {p - offset for p in positions[doc]}
            if not starts:
                break
        if starts:
            matches.add(doc)
    return matches


def evaluate(index: InvertedIndex, query: Query) -> EventSpace:
    """Compute the event space of a query against a built index.

    Unseen words yield the empty event space, never an error.
    """
    if query.mode is MatchMode.PHRASE:
        docs = _phrase(index, query.term)
    else:
        docs = _contains_all(index, query.term)
    return EventSpace(
        descriptor=query.term.text,
        mode=query.mode,
        doc_ids=tuple(sorted(docs)),
        universe_size=index.doc_count,
    )


def cardinality(e: EventSpace) -> int:
    return len(e.doc_ids)


def probability(e: EventSpace) -> Fraction:
    """Exact |event| / |universe|; undefined over an empty universe."""
    if e.universe_size == 0:
        raise UndefinedProbabilityError("probability over an empty universe")
    return Fraction(len(e.doc_ids), e.universe_size)


def combine(op: SetOp, a: EventSpace, b: EventSpace) -> EventSpace:
    if a.universe_size != b.universe_size:
        raise UniverseMismatchError(
            f"universe sizes differ: {a.universe_size} vs {b.universe_size}"
        )
    sa, sb = set(a.doc_ids), set(b.doc_ids)
    if op is SetOp.UNION:
        docs = sa | sb
    elif op is SetOp.INTERSECT:
        docs = sa & sb
    else:
        docs = sa - sb
    return EventSpace(
        descriptor=f"({a.descriptor}) {op.name} ({b.descriptor})",
        mode=None,
        doc_ids=tuple(sorted(docs)),
        universe_size=a.universe_size,
    )


def event_to_dict(e: EventSpace, include_ids: bool = False) -> dict:
    """JSON-ready view; doc ids are included only on request."""
    d = {
        "term": e.descriptor,
        "mode": e.mode.value if e.mode is not None else None,
        "universe_size": e.universe_size,
        "cardinality": len(e.doc_ids),
        "probability": (
            float(Fraction(len(e.doc_ids), e.universe_size))
            if e.universe_size
            else None
        ),
    }
    if include_ids:
        d["doc_ids"] = list(e.doc_ids)
    return d
