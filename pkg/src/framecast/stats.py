"""Corpus statistics and temporal-alignment queries over an annotation store.

All operations are read-only over a store snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import errors
from .blendnet import TURN_ROOT
from .store import AnnotationStore, Document, GestureAnnotation, Sentence


@dataclass(frozen=True)
class CorpusSummary:
    documents: int
    sentences: int
    annotation_sets: int
    visual_objects: int
    gestures: int
    gestures_by_frame: dict[str, int] = field(default_factory=dict)
    unclassified_gestures: int = 0


def corpus_summary(store: AnnotationStore, turn_root: Optional[str] = TURN_ROOT) -> CorpusSummary:
    """Exact integer counts. Gestures bucket by evoked frame; gestures without
    one land in a separate unclassified bucket. Turn-family frames always get
    a bucket (possibly zero) so gaps in the distribution stay visible."""
    by_frame: dict[str, int] = {}
    if turn_root and turn_root in store.ontology.frames:
        for frame in store.ontology.turn_family(turn_root):
            by_frame[frame.name] = 0
    unclassified = 0
    for gesture in store.gestures.values():
        if gesture.evoked_frame is None:
            unclassified += 1
        else:
            by_frame[gesture.evoked_frame] = by_frame.get(gesture.evoked_frame, 0) + 1
    return CorpusSummary(
        documents=len(store.documents),
        sentences=len(store.sentences),
        annotation_sets=len(store.annotation_sets),
        visual_objects=len(store.visual_objects),
        gestures=len(store.gestures),
        gestures_by_frame=dict(sorted(by_frame.items())),
        unclassified_gestures=unclassified,
    )


def gestures_overlapping(
    store: AnnotationStore,
    document: Union[Document, str],
    interval: tuple[int, int],
) -> list[GestureAnnotation]:
    """Gestures in the document whose time extent intersects the half-open
    interval with positive measure, ordered by extent start."""
    start, end = interval
    if start >= end:
        raise errors.EmptyInterval(f"interval [{start}, {end}) is empty")
    doc_id = document.id if isinstance(document, Document) else document
    if doc_id not in store.documents:
        raise errors.UnknownDocument(f"document {doc_id!r} not present")
    hits = []
    for gesture in store.gestures.values():
        if gesture.document != doc_id:
            continue
        g_start, g_end = store.gesture_extent(gesture)
        if g_start < end and g_end > start:
            hits.append((g_start, gesture.id, gesture))
    hits.sort(key=lambda item: (item[0], item[1]))
    return [gesture for _, _, gesture in hits]


def gestures_aligned_with_sentence(
    store: AnnotationStore, sentence: Union[Sentence, str]
) -> list[GestureAnnotation]:
    """Gestures overlapping the sentence's time span."""
    sent = store.sentences.get(sentence.id if isinstance(sentence, Sentence) else sentence)
    if sent is None:
        raise errors.UnknownSentence("sentence not present")
    if sent.time_span_ms is None:
        raise errors.SentenceHasNoTimeSpan(f"sentence {sent.id!r} has no time span")
    return gestures_overlapping(store, sent.document, sent.time_span_ms)
