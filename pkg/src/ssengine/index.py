"""Positional inverted index: build, lookup, and binary persistence.

On-disk layout (all integers little-endian, fixed width):

    magic        4 bytes  b"SSE1"
    version      u32
    built_at     f64      unix seconds, carried as metadata
    normalizer   u8 lowercase, u8 strip_punctuation, lp-string token_rule
    doc_count    u64
    vocab_size   u64
    per word (sorted ascending):
        lp-string word
        df         u32    number of postings entries
        per entry: u64 doc-id gap (delta from previous entry, first absolute)
                   u32 position count
                   u32 position gaps (delta, first absolute)

lp-string = u32 byte length + UTF-8 bytes. Doc ids and positions are strictly
ascending, so every stored gap for positions is >= 1 after the first value.
"""

from __future__ import annotations

import struct
import time
from dataclasses import dataclass, field
from typing import BinaryIO

from .corpus import Corpus, NormalizerConfig, Word
from .errors import IndexCorruptionError, IndexFormatError, StorageError

MAGIC = b"SSE1"
FORMAT_VERSION = 1

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
_F64 = struct.Struct("<d")


@dataclass(frozen=True)
class PostingEntry:
    doc_id: int
    positions: tuple[int, ...]


@dataclass(frozen=True)
class PostingList:
    entries: tuple[PostingEntry, ...] = ()

    def doc_ids(self) -> tuple[int, ...]:
        return tuple(e.doc_id for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


EMPTY_POSTINGS = PostingList()


@dataclass(frozen=True)
class IndexMeta:
    format_version: int
    vocabulary_size: int
    built_at: float


@dataclass(frozen=True)
class InvertedIndex:
    postings: dict[Word, PostingList]
    doc_count: int
    normalizer: NormalizerConfig
    meta: IndexMeta

    def document_frequency(self, word: Word) -> int:
        return len(self.postings.get(word, EMPTY_POSTINGS))


def build_index(corpus: Corpus) -> InvertedIndex:
    """Index every token position of every document."""
    acc: dict[Word, dict[int, list[int]]] = {}
    for doc in corpus.documents:
        for pos, word in enumerate(doc.tokens):
            acc.setdefault(word, {}).setdefault(doc.doc_id, []).append(pos)

    postings: dict[Word, PostingList] = {}
    for word in sorted(acc):
        entries = tuple(
            PostingEntry(doc_id, tuple(positions))
            for doc_id, positions in sorted(acc[word].items())
        )
        postings[word] = PostingList(entries)

    meta = IndexMeta(FORMAT_VERSION, len(postings), time.time())
    return InvertedIndex(postings, len(corpus.documents), corpus.normalizer, meta)


def postings_lookup(index: InvertedIndex, word: Word) -> PostingList:
    """Posting list for a word; empty when the word was never indexed."""
    return index.postings.get(word, EMPTY_POSTINGS)


def _write_string(f: BinaryIO, s: str) -> None:
    data = s.encode("utf-8")
    f.write(_U32.pack(len(data)))
    f.write(data)


def save_index(index: InvertedIndex, path: str) -> None:
    try:
        with open(path, "wb") as f:
            f.write(MAGIC)
            f.write(_U32.pack(FORMAT_VERSION))
            f.write(_F64.pack(index.meta.built_at))
            cfg = index.normalizer
            f.write(bytes([1 if cfg.lowercase else 0, 1 if cfg.strip_punctuation else 0]))
            _write_string(f, cfg.token_rule)
            f.write(_U64.pack(index.doc_count))
            f.write(_U64.pack(len(index.postings)))
            for word in sorted(index.postings):
                plist = index.postings[word]
                _write_string(f, word)
                f.write(_U32.pack(len(plist.entries)))
                prev_doc = 0
                first = True
                for entry in plist.entries:
                    gap = entry.doc_id if first else entry.doc_id - prev_doc
                    first = False
                    prev_doc = entry.doc_id
                    f.write(_U64.pack(gap))
                    f.write(_U32.pack(len(entry.positions)))
                    prev_pos = 0
                    pfirst = True
                    for p in entry.positions:
                        f.write(_U32.pack(p if pfirst else p - prev_pos))
                        pfirst = False
                        prev_pos = p
    except OSError as e:
        raise StorageError(f"cannot write {path}: {e}") from e


class _Reader:
    """Wraps a binary stream; short reads raise corruption errors with offsets."""

    def __init__(self, f: BinaryIO):
        self.f = f
        self.offset = 0

    def read(self, n: int) -> bytes:
        data = self.f.read(n)
        if len(data) != n:
            raise IndexCorruptionError(
                f"unexpected end of file, wanted {n} bytes", self.offset
            )
        self.offset += n
        return data

    def u32(self) -> int:
        return _U32.unpack(self.read(4))[0]

    def u64(self) -> int:
        return _U64.unpack(self.read(8))[0]

    def f64(self) -> float:
        return _F64.unpack(self.read(8))[0]

    def string(self) -> str:
        n = self.u32()
        try:
            return self.read(n).decode("utf-8")
        except UnicodeDecodeError as e:
            raise IndexCorruptionError(f"invalid UTF-8 in string: {e}", self.offset) from e

    def at_eof(self) -> bool:
        probe = self.f.read(1)
        if probe:
            self.f.seek(-1, 1)
            return False
        return True


def load_index(path: str) -> InvertedIndex:
    try:
        f = open(path, "rb")
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e}") from e
    with f:
        r = _Reader(f)
        magic = r.read(4)
        if magic != MAGIC:
            raise IndexFormatError(
                f"{path}: bad magic {magic!r}, expected {MAGIC!r}"
            )
        version = r.u32()
        if version != FORMAT_VERSION:
            raise IndexFormatError(
                f"{path}: unsupported format version {version}, expected {FORMAT_VERSION}"
            )
        built_at = r.f64()
        flags = r.read(2)
        normalizer = NormalizerConfig(
            lowercase=bool(flags[0]),
            strip_punctuation=bool(flags[1]),
            token_rule=r.string(),
        )
        doc_count = r.u64()
        vocab_size = r.u64()
        postings: dict[Word, PostingList] = {}
        for _ in range(vocab_size):
            word = r.string()
            df = r.u32()
            entries = []
            doc_id = 0
            first = True
            for _ in range(df):
                gap = r.u64()
                doc_id = gap if first else doc_id + gap
                first = False
                npos = r.u32()
                if npos == 0:
                    raise IndexCorruptionError(
                        f"empty position list for {word!r}", r.offset
                    )
                positions = []
                pos = 0
                pfirst = True
                for _ in range(npos):
                    g = r.u32()
                    pos = g if pfirst else pos + g
                    pfirst = False
                    positions.append(pos)
                entries.append(PostingEntry(doc_id, tuple(positions)))
            postings[word] = PostingList(tuple(entries))
        if not r.at_eof():
            raise IndexFormatError(f"{path}: trailing bytes after postings")

    meta = IndexMeta(version, vocab_size, built_at)
    return InvertedIndex(postings, doc_count, normalizer, meta)
