"""Empirical audits of the disjointness/containment claims over a corpus.

Each audit takes term pairs whose word sets satisfy a stated hypothesis,
evaluates both event spaces, and records whether the predicted set relation
actually holds. Violations are counted, never hidden: hypothesis-violating
inputs raise precondition errors so the denominators stay honest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import EmptyAuditError, PreconditionError
from .events import MatchMode, Query, evaluate
from .index import InvertedIndex
from .termspace import Term, TermRelation, term_relation

LEMMA_IDS = ("L1", "P1", "L2", "P2", "L3", "INDEP")


@dataclass(frozen=True)
class PairVerdict:
    term_x: str
    term_y: str
    predicted: str
    observed: str
    holds: bool
    card_x: int
    card_y: int
    card_intersect: int
    card_union: int
    jaccard: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "t_x": self.term_x,
            "t_y": self.term_y,
            "predicted": self.predicted,
            "observed": self.observed,
            "holds": self.holds,
            "cards": {
                "x": self.card_x,
                "y": self.card_y,
                "intersect": self.card_intersect,
                "union": self.card_union,
            },
            "jaccard": self.jaccard,
        }
        if self.extra:
            d.update(self.extra)
        return d


@dataclass(frozen=True)
class AuditReport:
    lemma_id: str
    mode: MatchMode
    seed: int
    verdicts: tuple[PairVerdict, ...]
    aggregate_bias: Optional[int] = None
    degenerate: bool = False

    @property
    def pairs_tested(self) -> int:
        return len(self.verdicts)

    @property
    def holds(self) -> int:
        return sum(1 for v in self.verdicts if v.holds)

    @property
    def hold_rate(self) -> float:
        if not self.verdicts:
            return 1.0 if self.degenerate else float("nan")
        return self.holds / self.pairs_tested

    def to_dict(self) -> dict:
        d = {
            "lemma_id": self.lemma_id,
            "mode": self.mode.value,
            "seed": self.seed,
            "pairs_tested": self.pairs_tested,
            "holds": self.holds,
            "hold_rate": self.hold_rate,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }
        if self.aggregate_bias is not None:
            d["aggregate_bias"] = self.aggregate_bias
        if self.degenerate:
            d["degenerate"] = True
        return d


def _observed_relation(x: set[int], y: set[int]) -> str:
    if x == y:
        return "equal"
    if x < y:
        return "x_subset_of_y"
    if y < x:
        return "y_subset_of_x"
    if x & y:
        return "overlap"
    return "disjoint"


def _jaccard(x: set[int], y: set[int]) -> float:
    union = len(x | y)
    return len(x & y) / union if union else 1.0


def _verdict(
    term_x: Term,
    term_y: Term,
    x: set[int],
    y: set[int],
    predicted: str,
    holds: bool,
    extra: Optional[dict] = None,
) -> PairVerdict:
    return PairVerdict(
        term_x=term_x.text,
        term_y=term_y.text,
        predicted=predicted,
        observed=_observed_relation(x, y),
        holds=holds,
        card_x=len(x),
        card_y=len(y),
        card_intersect=len(x & y),
        card_union=len(x | y),
        jaccard=_jaccard(x, y),
        extra=extra or {},
    )


def _eval_set(index: InvertedIndex, term: Term, mode: MatchMode) -> set[int]:
    return set(evaluate(index, Query(term, mode)).doc_ids)


def audit_lemma1(
    index: InvertedIndex,
    pairs: Sequence[tuple[Term, Term]],
    mode: MatchMode = MatchMode.CONTAINS_ALL,
    seed: int = 0,
) -> AuditReport:
    """Superset-term absorption: for t_y's words a strict subset of t_x's,
    is the smaller term's event space contained in the bigger term's?

    The engine-true direction of containment under conjunctive matching is
    the reverse; each verdict records that direction too.
    """
    if not pairs:
        raise EmptyAuditError("lemma 1 audit needs at least one pair")
    offenders = [
        (tx.text, ty.text)
        for tx, ty in pairs
        if term_relation(ty, tx) is not TermRelation.SUBSET
    ]
    if offenders:
        raise PreconditionError(
            f"pairs violate the strict word-subset hypothesis: {offenders}"
        )
    verdicts = []
    for tx, ty in pairs:
        x = _eval_set(index, tx, mode)
        y = _eval_set(index, ty, mode)
        verdicts.append(
            _verdict(
                tx,
                ty,
                x,
                y,
                predicted="y_subset_of_x",
                holds=y <= x,
                extra={"reverse_containment_holds": x <= y},
            )
        )
    return AuditReport("L1", mode, seed, tuple(verdicts))


def audit_prop1(
    index: InvertedIndex,
    chain: Sequence[Term],
    mode: MatchMode = MatchMode.CONTAINS_ALL,
    seed: int = 0,
) -> AuditReport:
    """The lemma-1 relation applied along a strict word-set chain.

    Chains shorter than two terms hold vacuously and are flagged degenerate.
    """
    if len(chain) < 2:
        return AuditReport("P1", mode, seed, (), degenerate=True)
    for smaller, larger in zip(chain, chain[1:]):
        if term_relation(smaller, larger) is not TermRelation.SUBSET:
            raise PreconditionError(
                f"chain link ({smaller.text!r}, {larger.text!r}) is not a "
                "strict word-set subset step"
            )
    pairs = [(larger, smaller) for smaller, larger in zip(chain, chain[1:])]
    link_report = audit_lemma1(index, pairs, mode, seed)
    return AuditReport("P1", mode, seed, link_report.verdicts)


def audit_lemma2(
    index: InvertedIndex,
    pairs: Sequence[tuple[Term, Term]],
    mode: MatchMode = MatchMode.CONTAINS_ALL,
    seed: int = 0,
) -> AuditReport:
    """Disjoint-word terms predicted to have disjoint event spaces."""
    if not pairs:
        raise EmptyAuditError("lemma 2 audit needs at least one pair")
    offenders = [
        (ty.text, tz.text)
        for ty, tz in pairs
        if term_relation(ty, tz) is not TermRelation.DISJOINT
    ]
    if offenders:
        raise PreconditionError(f"pairs share words: {offenders}")
    verdicts = []
    for ty, tz in pairs:
        y = _eval_set(index, ty, mode)
        z = _eval_set(index, tz, mode)
        verdicts.append(
            _verdict(ty, tz, y, z, predicted="disjoint", holds=not (y & z))
        )
    return AuditReport("L2", mode, seed, tuple(verdicts))


def audit_lemma3(
    index: InvertedIndex,
    pairs: Sequence[tuple[Term, Term]],
    mode: MatchMode = MatchMode.CONTAINS_ALL,
    seed: int = 0,
) -> AuditReport:
    """Word-disjoint terms that co-occur somewhere, predicted to have *equal*
    event spaces. Jaccard overlap grades how far off the prediction is.
    """
    if not pairs:
        raise EmptyAuditError("lemma 3 audit needs at least one pair")
    verdicts = []
    for tx, tz in pairs:
        if term_relation(tx, tz) is not TermRelation.DISJOINT:
            raise PreconditionError(
                f"pair ({tx.text!r}, {tz.text!r}) shares words"
            )
        x = _eval_set(index, tx, mode)
        z = _eval_set(index, tz, mode)
        if not x & z:
            raise PreconditionError(
                f"pair ({tx.text!r}, {tz.text!r}) never co-occurs; "
                "the hypothesis requires a shared document"
            )
        verdicts.append(
            _verdict(tx, tz, x, z, predicted="equal", holds=x == z)
        )
    return AuditReport("L3", mode, seed, tuple(verdicts))


def audit_independence(
    index: InvertedIndex,
    terms: Sequence[Term],
    mode: MatchMode = MatchMode.CONTAINS_ALL,
    seed: int = 0,
) -> AuditReport:
    """Pairwise disjointness sweep over a term list.

    Aggregate bias is the total size of all pairwise intersections; zero
    means the independence assumption holds exactly on this corpus. Each
    verdict also records the (always true) non-negativity sanity check on
    the intersection cardinality.
    """
    if len(terms) < 2:
        raise PreconditionError("independence audit needs at least two terms")
    sets = [(t, _eval_set(index, t, mode)) for t in terms]
    verdicts = []
    bias = 0
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            (ti, si), (tj, sj) = sets[i], sets[j]
            inter = len(si & sj)
            bias += inter
            verdicts.append(
                _verdict(
                    ti,
                    tj,
                    si,
                    sj,
                    predicted="disjoint",
                    holds=inter == 0,
                    extra={"intersection_nonnegative": inter >= 0},
                )
            )
    return AuditReport("INDEP", mode, seed, tuple(verdicts), aggregate_bias=bias)
