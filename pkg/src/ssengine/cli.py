"""Command-line interface.

Subcommands: ingest, synth, build, stats, query, subsets, prob, audit.
Exit codes: 0 success, 1 validation/precondition error, 2 I/O or file-format
error. Output is plain text by default; --format json (or SSE_FORMAT=json)
emits exactly one JSON document per invocation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import corpus as corpus_mod
from .audit import (
    AuditReport,
    audit_independence,
    audit_lemma1,
    audit_lemma2,
    audit_lemma3,
    audit_prop1,
)
from .errors import StorageError, ValidationError
from .events import MatchMode, Query, evaluate, event_to_dict, probability
from .index import InvertedIndex, build_index, load_index, save_index
from .termspace import enumerate_subsets, parse_term, subset_probability

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _default_format() -> str:
    fmt = os.environ.get("SSE_FORMAT", "text")
    return fmt if fmt in ("text", "json") else "text"


def _emit(payload: dict, fmt: str, text_lines: Sequence[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _mode_from_flag(value: str) -> MatchMode:
    return MatchMode.PHRASE if value == "phrase" else MatchMode.CONTAINS_ALL


def _normalizer_from_args(args) -> corpus_mod.NormalizerConfig:
    return corpus_mod.NormalizerConfig(
        lowercase=not args.keep_case,
        strip_punctuation=not args.keep_punctuation,
        token_rule=args.token_rule,
    )


def _add_normalizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--keep-case", action="store_true",
                   help="do not lowercase tokens")
    p.add_argument("--keep-punctuation", action="store_true",
                   help="split on whitespace only")
    p.add_argument("--token-rule", default="unicode_words",
                   choices=corpus_mod.TOKEN_RULES)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssengine",
        description="Desk-scale search engine: index a corpus, evaluate "
                    "term event spaces, and audit their set algebra.",
    )
    parser.add_argument("--format", choices=("text", "json"), default=None,
                        help="output format (default: text, or $SSE_FORMAT)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="read a JSONL file into a corpus file")
    p.add_argument("input", help="JSONL input path")
    p.add_argument("-o", "--output", required=True, help="corpus file to write")
    _add_normalizer_flags(p)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("spec", help="JSON spec: {groups: [{term, docs}], noise}")
    p.add_argument("-o", "--output", required=True, help="corpus file to write")
    p.add_argument("--seed", type=int, default=0)
    _add_normalizer_flags(p)

    p = sub.add_parser("build", help="build an index file from a corpus file")
    p.add_argument("corpus", help="corpus file")
    p.add_argument("-o", "--output", required=True, help="index file to write")

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("corpus", help="corpus file")

    p = sub.add_parser("query", help="evaluate a term's event space")
    p.add_argument("--index", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--mode", choices=("contains", "phrase"), default="contains")
    p.add_argument("--show-ids", action="store_true",
                   help="include matching document ids")

    p = sub.add_parser("subsets", help="enumerate a term's non-empty word subsets")
    p.add_argument("--term", required=True)
    _add_normalizer_flags(p)

    p = sub.add_parser("prob", help="subset probability and corpus probability")
    p.add_argument("--index", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--mode", choices=("contains", "phrase"), default="contains")

    p = sub.add_parser("audit", help="run a lemma/independence audit")
    p.add_argument("--index", required=True)
    p.add_argument("--lemma", required=True,
                   choices=("l1", "p1", "l2", "l3", "indep"))
    p.add_argument("--pairs", required=True,
                   help="JSON file: term-string pairs for l1/l2/l3, a term "
                        "chain for p1, a term list for indep")
    p.add_argument("--mode", choices=("contains", "phrase"), default="contains")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-dir", default=None,
                   help="also write verdicts.csv and summary figures here")

    return parser


def _cmd_ingest(args, fmt: str) -> int:
    result = corpus_mod.ingest_jsonl(args.input, _normalizer_from_args(args))
    corpus_mod.save_corpus(result.corpus, args.output)
    payload = {
        "documents": len(result.corpus),
        "malformed_records": result.malformed_records,
        "output": args.output,
    }
    lines = [f"ingested {len(result.corpus)} documents -> {args.output}"]
    if result.malformed_records:
        lines.append(f"skipped {result.malformed_records} malformed records:")
        lines.extend(f"  {e}" for e in result.errors)
    _emit(payload, fmt, lines)
    return EXIT_OK


def _cmd_synth(args, fmt: str) -> int:
    try:
        with open(args.spec, "r", encoding="utf-8") as f:
            spec_doc = json.load(f)
    except OSError as e:
        raise StorageError(f"cannot read {args.spec}: {e}") from e
    except json.JSONDecodeError as e:
        raise StorageError(f"{args.spec}: invalid JSON ({e.msg})") from e
    spec = corpus_mod.SyntheticSpec.from_dict(spec_doc)
    corpus = corpus_mod.generate_synthetic(args.seed, spec, _normalizer_from_args(args))
    corpus_mod.save_corpus(corpus, args.output)
    payload = {"documents": len(corpus), "seed": args.seed, "output": args.output}
    _emit(payload, fmt, [f"generated {len(corpus)} documents (seed {args.seed}) -> {args.output}"])
    return EXIT_OK


def _cmd_build(args, fmt: str) -> int:
    corpus = corpus_mod.load_corpus(args.corpus)
    index = build_index(corpus)
    save_index(index, args.output)
    payload = {
        "documents": index.doc_count,
        "vocabulary": len(index.postings),
        "output": args.output,
    }
    _emit(payload, fmt, [
        f"indexed {index.doc_count} documents, "
        f"{len(index.postings)} distinct words -> {args.output}"
    ])
    return EXIT_OK


def _cmd_stats(args, fmt: str) -> int:
    corpus = corpus_mod.load_corpus(args.corpus)
    stats = corpus_mod.corpus_stats(corpus)
    payload = {
        "documents": stats.doc_count,
        "total_tokens": stats.total_tokens,
        "vocabulary": stats.vocabulary_size,
    }
    _emit(payload, fmt, [
        f"documents:    {stats.doc_count}",
        f"total tokens: {stats.total_tokens}",
        f"vocabulary:   {stats.vocabulary_size}",
    ])
    return EXIT_OK


def _cmd_query(args, fmt: str) -> int:
    index = load_index(args.index)
    term = parse_term(args.term, index.normalizer)
    event = evaluate(index, Query(term, _mode_from_flag(args.mode)))
    payload = event_to_dict(event, include_ids=args.show_ids)
    lines = [
        f"term:        {event.descriptor}",
        f"mode:        {args.mode}",
        f"matches:     {len(event.doc_ids)} of {event.universe_size}",
    ]
    if event.universe_size:
        p = probability(event)
        lines.append(f"probability: {p} ({float(p):.6g})")
    if args.show_ids:
        lines.append(f"doc ids:     {list(event.doc_ids)}")
    _emit(payload, fmt, lines)
    return EXIT_OK


def _cmd_subsets(args, fmt: str) -> int:
    term = parse_term(args.term, _normalizer_from_args(args))
    subs = enumerate_subsets(term)
    p = subset_probability(term)
    payload = {
        "term": term.text,
        "k": term.k,
        "subset_count": len(subs),
        "subset_probability": float(p),
        "subset_probability_exact": f"{p.numerator}/{p.denominator}",
        "subsets": [s.text for s in subs],
    }
    lines = [f"term: {term.text} (k={term.k})",
             f"{len(subs)} non-empty subsets, each with probability {p}:"]
    lines.extend(f"  {s.text}" for s in subs)
    _emit(payload, fmt, lines)
    return EXIT_OK


def _cmd_prob(args, fmt: str) -> int:
    index = load_index(args.index)
    term = parse_term(args.term, index.normalizer)
    sp = subset_probability(term)
    event = evaluate(index, Query(term, _mode_from_flag(args.mode)))
    ep: Optional[Fraction] = probability(event) if event.universe_size else None
    payload = {
        "term": term.text,
        "k": term.k,
        "subset_probability": float(sp),
        "subset_probability_exact": f"{sp.numerator}/{sp.denominator}",
        "event_cardinality": len(event.doc_ids),
        "universe_size": event.universe_size,
        "event_probability": float(ep) if ep is not None else None,
    }
    lines = [
        f"term: {term.text} (k={term.k})",
        f"subset probability 1/(2^{term.k}-1) = {sp} ({float(sp):.6g})",
        f"event: {len(event.doc_ids)} of {event.universe_size} documents",
    ]
    if ep is not None:
        lines.append(f"event probability = {ep} ({float(ep):.6g})")
    else:
        lines.append("event probability undefined: empty universe")
    _emit(payload, fmt, lines)
    return EXIT_OK


def _load_pairs_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise StorageError(f"{path}: invalid JSON ({e.msg})") from e
    if not isinstance(doc, list):
        raise ValidationError(f"{path}: expected a JSON array")
    return doc


def _report_text(report: AuditReport) -> list[str]:
    lines = [
        f"audit {report.lemma_id} mode={report.mode.value} seed={report.seed}",
        f"pairs tested: {report.pairs_tested}",
        f"holds:        {report.holds}",
        f"hold rate:    {report.hold_rate:.4f}" if report.pairs_tested
        else "hold rate:    1.0000 (degenerate)",
    ]
    if report.aggregate_bias is not None:
        lines.append(f"aggregate bias: {report.aggregate_bias}")
    for v in report.verdicts:
        mark = "ok " if v.holds else "VIOLATION"
        lines.append(
            f"  [{mark}] ({v.term_x!r}, {v.term_y!r}) predicted={v.predicted} "
            f"observed={v.observed} |x|={v.card_x} |y|={v.card_y} "
            f"|∩|={v.card_intersect} |∪|={v.card_union} jaccard={v.jaccard:.4f}"
        )
    return lines


def _cmd_audit(args, fmt: str) -> int:
    index = load_index(args.index)
    doc = _load_pairs_file(args.pairs)
    mode = _mode_from_flag(args.mode)

    def term_of(s) -> "Term":
        if not isinstance(s, str):
            raise ValidationError(f"{args.pairs}: expected term strings, got {s!r}")
        return parse_term(s, index.normalizer)

    if args.lemma in ("l1", "l2", "l3"):
        pairs = []
        for item in doc:
            if not isinstance(item, list) or len(item) != 2:
                raise ValidationError(
                    f"{args.pairs}: each entry must be a [term, term] pair"
                )
            pairs.append((term_of(item[0]), term_of(item[1])))
        fn = {"l1": audit_lemma1, "l2": audit_lemma2, "l3": audit_lemma3}[args.lemma]
        report = fn(index, pairs, mode, args.seed)
    elif args.lemma == "p1":
        report = audit_prop1(index, [term_of(s) for s in doc], mode, args.seed)
    else:
        report = audit_independence(index, [term_of(s) for s in doc], mode, args.seed)

    if args.report_dir:
        from .report import write_report_files

        written = write_report_files(report, args.report_dir)
    else:
        written = []

    payload = report.to_dict()
    if written:
        payload["report_files"] = written
    lines = _report_text(report)
    lines.extend(f"wrote {p}" for p in written)
    _emit(payload, fmt, lines)
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "synth": _cmd_synth,
    "build": _cmd_build,
    "stats": _cmd_stats,
    "query": _cmd_query,
    "subsets": _cmd_subsets,
    "prob": _cmd_prob,
    "audit": _cmd_audit,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse prints its own message; --help exits 0, bad flags exit 1
        return EXIT_OK if e.code == 0 else EXIT_VALIDATION
    fmt = args.format or _default_format()
    try:
        return _COMMANDS[args.command](args, fmt)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except StorageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
