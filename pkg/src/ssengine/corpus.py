"""Corpus ingestion, tokenization, and synthetic fixture generation.

A corpus is an ordered, immutable collection of documents. Tokenization is
deterministic under a fixed normalizer config; document ids are assigned in
ingestion order starting at 0, so downstream event spaces have reproducible
contents.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import StorageError, SyntheticSpecError, ValidationError

# A word is a normalized token: non-empty, no whitespace, lowercase under
# the default config. Plain str keeps the hot paths allocation-free.
Word = str

_UNICODE_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

TOKEN_RULES = ("unicode_words", "whitespace")


@dataclass(frozen=True)
class NormalizerConfig:
    lowercase: bool = True
    strip_punctuation: bool = True
    token_rule: str = "unicode_words"

    def __post_init__(self):
        if self.token_rule not in TOKEN_RULES:
            raise ValidationError(
                f"unknown token_rule {self.token_rule!r}; expected one of {TOKEN_RULES}"
            )

    def to_dict(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "strip_punctuation": self.strip_punctuation,
            "token_rule": self.token_rule,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NormalizerConfig":
        return cls(
            lowercase=bool(d.get("lowercase", True)),
            strip_punctuation=bool(d.get("strip_punctuation", True)),
            token_rule=d.get("token_rule", "unicode_words"),
        )


def tokenize(text: str, config: NormalizerConfig = NormalizerConfig()) -> list[Word]:
    """Split text into normalized words. Empty input yields an empty list."""
    if config.lowercase:
        text = text.lower()
    if config.token_rule == "whitespace" or not config.strip_punctuation:
        tokens = text.split()
    else:
        tokens = _UNICODE_WORD_RE.findall(text)
    return [t for t in tokens if t]


@dataclass(frozen=True)
class Document:
    doc_id: int
    source_uri: str
    raw_text: str
    tokens: tuple[Word, ...]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    normalizer: NormalizerConfig = NormalizerConfig()

    def __len__(self) -> int:
        return len(self.documents)


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    total_tokens: int
    vocabulary_size: int


@dataclass(frozen=True)
class IngestResult:
    corpus: Corpus
    malformed_records: int
    errors: tuple[str, ...] = ()


def _make_corpus(
    texts: Iterable[tuple[str, str]], config: NormalizerConfig
) -> Corpus:
    docs = []
    for i, (uri, text) in enumerate(texts):
        docs.append(Document(i, uri, text, tuple(tokenize(text, config))))
    return Corpus(tuple(docs), config)


def ingest_jsonl(path: str, config: NormalizerConfig = NormalizerConfig()) -> IngestResult:
    """Read a JSON-lines file: one object per line, `text` required, `id` optional.

    Malformed lines (bad JSON, missing/non-string `text`) are counted and
    skipped; ingestion continues. Unreadable files raise StorageError.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e}") from e

    texts: list[tuple[str, str]] = []
    errors: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            errors.append(f"line {lineno}: invalid JSON ({e.msg})")
            continue
        if not isinstance(record, dict) or not isinstance(record.get("text"), str):
            errors.append(f"line {lineno}: missing required string field 'text'")
            continue
        rid = record.get("id")
        uri = str(rid) if rid is not None else f"{path}#{lineno}"
        texts.append((uri, record["text"]))

    return IngestResult(_make_corpus(texts, config), len(errors), tuple(errors))


@dataclass(frozen=True)
class TermGroup:
    term: str
    docs: int


@dataclass(frozen=True)
class SyntheticSpec:
    """Fixture recipe: each group gets `docs` documents containing its term.

    With ``noise`` = 0 the designated terms' conjunctive event spaces are
    pairwise disjoint by construction; with noise > 0, each document embeds
    a second group's term with that probability.
    """

    groups: tuple[TermGroup, ...]
    noise: float = 0.0
    filler_vocab_size: int = 120
    filler_tokens: int = 12

    def __post_init__(self):
        if not self.groups:
            raise SyntheticSpecError("synthetic spec needs at least one group")
        if not 0.0 <= self.noise <= 1.0:
            raise SyntheticSpecError("noise must be in [0, 1]")
        for g in self.groups:
            if g.docs < 0:
                raise SyntheticSpecError(f"group {g.term!r} has negative doc count")

    @classmethod
    def from_dict(cls, d: dict) -> "SyntheticSpec":
        groups = d.get("groups")
        if not isinstance(groups, list):
            raise SyntheticSpecError("synthetic spec must have a 'groups' list")
        parsed = []
        for g in groups:
            if not isinstance(g, dict) or "term" not in g or "docs" not in g:
                raise SyntheticSpecError("each group needs 'term' and 'docs'")
            parsed.append(TermGroup(str(g["term"]), int(g["docs"])))
        return cls(tuple(parsed), float(d.get("noise", 0.0)))


def generate_synthetic(
    seed: int,
    spec: SyntheticSpec,
    config: NormalizerConfig = NormalizerConfig(),
) -> Corpus:
    """Build a deterministic corpus from a group spec.

    Documents are emitted group by group; each contains its group's term as a
    contiguous phrase surrounded by neutral filler words drawn from a shared
    pad vocabulary that never collides with designated term words.
    """
    rng = random.Random(seed)
    filler = [f"pad{i:03d}" for i in range(spec.filler_vocab_size)]
    group_words = [tokenize(g.term, config) for g in spec.groups]
    for g, words in zip(spec.groups, group_words):
        if not words:
            raise SyntheticSpecError(f"group term {g.term!r} normalizes to no words")

    texts: list[tuple[str, str]] = []
    for gi, (group, words) in enumerate(zip(spec.groups, group_words)):
        for di in range(group.docs):
            n_fill = rng.randint(max(1, spec.filler_tokens // 2), spec.filler_tokens)
            tokens = [rng.choice(filler) for _ in range(n_fill)]
            insert_at = rng.randint(0, len(tokens))
            tokens[insert_at:insert_at] = words
            if spec.noise > 0 and len(spec.groups) > 1 and rng.random() < spec.noise:
                other = rng.randrange(len(spec.groups) - 1)
                if other >= gi:
                    other += 1
                at = rng.randint(0, len(tokens))
                tokens[at:at] = group_words[other]
            texts.append((f"synthetic://group{gi}/doc{di}", " ".join(tokens)))

    return _make_corpus(texts, config)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    vocab: set[Word] = set()
    total = 0
    for d in corpus.documents:
        total += len(d.tokens)
        vocab.update(d.tokens)
    return CorpusStats(len(corpus.documents), total, len(vocab))


CORPUS_FORMAT = "sse-corpus"
CORPUS_VERSION = 1


def save_corpus(corpus: Corpus, path: str) -> None:
    payload = {
        "format": CORPUS_FORMAT,
        "version": CORPUS_VERSION,
        "normalizer": corpus.normalizer.to_dict(),
        "documents": [
            {"doc_id": d.doc_id, "source_uri": d.source_uri, "text": d.raw_text}
            for d in corpus.documents
        ],
    }
    try:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, ensure_ascii=False)
            f.write("\n")
    except OSError as e:
        raise StorageError(f"cannot write {path}: {e}") from e


def load_corpus(path: str) -> Corpus:
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise StorageError(f"{path} is not a corpus file: {e.msg}") from e
    if not isinstance(payload, dict) or payload.get("format") != CORPUS_FORMAT:
        raise StorageError(f"{path} is not a corpus file")
    if payload.get("version") != CORPUS_VERSION:
        raise StorageError(f"{path}: unsupported corpus version {payload.get('version')}")
    config = NormalizerConfig.from_dict(payload.get("normalizer", {}))
    texts = [(d["source_uri"], d["text"]) for d in payload["documents"]]
    return _make_corpus(texts, config)
