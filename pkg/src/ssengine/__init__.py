"""ssengine: a desk-scale search engine for auditing query event-space algebra.

Index a local corpus, evaluate the document set matching a multi-word term
(conjunctive or exact-phrase semantics), compute exact set probabilities,
and audit where disjointness and containment assumptions hold or break.
"""

from .audit import (
    AuditReport,
    PairVerdict,
    audit_independence,
    audit_lemma1,
    audit_lemma2,
    audit_lemma3,
    audit_prop1,
)
from .corpus import (
    Corpus,
    CorpusStats,
    Document,
    NormalizerConfig,
    SyntheticSpec,
    TermGroup,
    corpus_stats,
    generate_synthetic,
    ingest_jsonl,
    load_corpus,
    save_corpus,
    tokenize,
)
from .errors import (
    EmptyAuditError,
    EmptyTermError,
    IndexCorruptionError,
    IndexFormatError,
    PreconditionError,
    SSEngineError,
    StorageError,
    TermSizeError,
    UndefinedProbabilityError,
    UniverseMismatchError,
    ValidationError,
)
from .events import (
    EventSpace,
    MatchMode,
    Query,
    SetOp,
    cardinality,
    combine,
    evaluate,
    event_to_dict,
    probability,
)
from .index import (
    InvertedIndex,
    PostingEntry,
    PostingList,
    build_index,
    load_index,
    postings_lookup,
    save_index,
)
from .termspace import (
    K_MAX,
    Term,
    TermRelation,
    enumerate_subsets,
    parse_term,
    subset_probability,
    term_relation,
)

__version__ = "0.1.0"
