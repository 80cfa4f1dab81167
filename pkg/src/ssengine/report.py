"""Render an audit report to files: a CSV of verdicts plus summary figures."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .audit import AuditReport
from .errors import StorageError

CSV_FIELDS = [
    "t_x",
    "t_y",
    "predicted",
    "observed",
    "holds",
    "card_x",
    "card_y",
    "card_intersect",
    "card_union",
    "jaccard",
]


def write_report_files(report: AuditReport, out_dir: str) -> list[str]:
    """Write verdicts.csv, jaccard.png, and cardinalities.png into out_dir.

    Returns the paths written, in a fixed order.
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as e:
        raise StorageError(f"cannot create {out_dir}: {e}") from e

    csv_path = os.path.join(out_dir, "verdicts.csv")
    try:
        with open(csv_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_FIELDS)
            for v in report.verdicts:
                writer.writerow(
                    [
                        v.term_x,
                        v.term_y,
                        v.predicted,
                        v.observed,
                        int(v.holds),
                        v.card_x,
                        v.card_y,
                        v.card_intersect,
                        v.card_union,
                        f"{v.jaccard:.6f}",
                    ]
                )
    except OSError as e:
        raise StorageError(f"cannot write {csv_path}: {e}") from e

    labels = [f"{v.term_x} / {v.term_y}" for v in report.verdicts]
    x = range(len(labels))

    jaccard_path = os.path.join(out_dir, "jaccard.png")
    fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(labels)), 4))
    colors = ["#2a7f3f" if v.holds else "#b03030" for v in report.verdicts]
    ax.bar(x, [v.jaccard for v in report.verdicts], color=colors)
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("Jaccard overlap")
    ax.set_ylim(0, 1)
    ax.set_title(
        f"{report.lemma_id} ({report.mode.value}): "
        f"{report.holds}/{report.pairs_tested} hold"
    )
    fig.tight_layout()
    fig.savefig(jaccard_path, dpi=120)
    plt.close(fig)

    cards_path = os.path.join(out_dir, "cardinalities.png")
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(labels)), 4))
    width = 0.27
    ax.bar([i - width for i in x], [v.card_x for v in report.verdicts],
           width, label="|event x|", color="#4477aa")
    ax.bar(list(x), [v.card_y for v in report.verdicts],
           width, label="|event y|", color="#ee7733")
    ax.bar([i + width for i in x], [v.card_intersect for v in report.verdicts],
           width, label="|intersection|", color="#777777")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("documents")
    ax.legend(fontsize=8)
    ax.set_title(f"{report.lemma_id} event-space cardinalities")
    fig.tight_layout()
    fig.savefig(cards_path, dpi=120)
    plt.close(fig)

    return [csv_path, jaccard_path, cards_path]
