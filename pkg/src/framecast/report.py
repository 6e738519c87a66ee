"""Corpus report: delimited summary tables plus rendered figures.

Writes, into an output directory:

* ``summary.csv`` / ``summary.tsv`` — corpus counts and the per-frame
  gesture distribution,
* ``gesture_distribution.png`` — bar chart of gestures per evoked frame,
* ``gesture_timeline.png`` — per-document gesture extents over time.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .stats import corpus_summary
from .store import AnnotationStore


def write_summary_table(store: AnnotationStore, path: Path, delimiter: str = ",") -> Path:
    summary = corpus_summary(store)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow(["section", "key", "count"])
        for key in ("documents", "sentences", "annotation_sets", "visual_objects", "gestures"):
            writer.writerow(["totals", key, getattr(summary, key)])
        for frame, count in summary.gestures_by_frame.items():
            writer.writerow(["gestures_by_frame", frame, count])
        writer.writerow(["gestures_by_frame", "unclassified", summary.unclassified_gestures])
    return path


def plot_gesture_distribution(store: AnnotationStore, path: Path) -> Path:
    summary = corpus_summary(store)
    labels = list(summary.gestures_by_frame) + ["unclassified"]
    counts = list(summary.gestures_by_frame.values()) + [summary.unclassified_gestures]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(range(len(labels)), counts, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("gestures")
    ax.set_title("Gestures per evoked frame")
    for i, count in enumerate(counts):
        ax.text(i, count, str(count), ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_gesture_timeline(store: AnnotationStore, path: Path) -> Path:
    doc_ids = sorted(store.documents)
    fig, ax = plt.subplots(figsize=(10, 0.6 * max(len(doc_ids), 4) + 1.5))
    for row, doc_id in enumerate(doc_ids):
        spans = [
            store.gesture_extent(g)
            for g in store.gestures.values()
            if g.document == doc_id
        ]
        bars = [(start / 1000.0, (end - start) / 1000.0) for start, end in spans]
        ax.broken_barh(bars, (row - 0.3, 0.6), color="#a85448")
    ax.set_yticks(range(len(doc_ids)))
    ax.set_yticklabels(doc_ids)
    ax.set_xlabel("time (s)")
    ax.set_title("Gesture extents per document")
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(store: AnnotationStore, out_dir: Path, table_format: str = "csv") -> list[Path]:
    """Render all report artifacts; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    delimiter = "\t" if table_format == "tsv" else ","
    suffix = "tsv" if table_format == "tsv" else "csv"
    return [
        write_summary_table(store, out_dir / f"summary.{suffix}", delimiter),
        plot_gesture_distribution(store, out_dir / "gesture_distribution.png"),
        plot_gesture_timeline(store, out_dir / "gesture_timeline.png"),
    ]
