"""Annotation store: documents, sentences, text annotation sets, visual
objects with keyframed bounding-box tracks, and multi-part gesture records.

Boxes are normalized to [0, 1] of the media dimensions and quantized to six
decimals so exports are media-independent and byte-deterministic. Character
spans are half-open and count Unicode scalar values.

Same concurrency contract as the ontology: reads are pure, mutations are
serialized by the store's lock.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

from . import errors
from .classifier import ClassificationResult
from .features import GestureFeatures
from .ontology import FrameKind, LexicalUnit, Ontology, PartOfSpeech, ValidationReport

Span = tuple[int, int]


@dataclass(frozen=True)
class MediaInfo:
    duration_ms: int
    width_px: int
    height_px: int


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    media: MediaInfo


@dataclass(frozen=True)
class Sentence:
    id: str
    document: str
    text: str
    time_span_ms: Optional[Span] = None


@dataclass(frozen=True)
class AnnotationSet:
    """One LU occurrence in a sentence plus its labeled FE character spans."""

    id: str
    sentence: str
    lu: LexicalUnit
    target_span: Span
    fe_labels: tuple[tuple[str, Span], ...] = ()


@dataclass(frozen=True)
class BoundingBox:
    """Box normalized to the media rectangle; coordinates quantized to 6 decimals."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        for name in ("x", "y", "w", "h"):
            object.__setattr__(self, name, round(float(getattr(self, name)), 6))


@dataclass(frozen=True)
class Keyframe:
    t_ms: int
    box: BoundingBox


@dataclass(frozen=True)
class BoundingBoxTrack:
    keyframes: tuple[Keyframe, ...]

    @property
    def start_ms(self) -> int:
        return self.keyframes[0].t_ms

    @property
    def end_ms(self) -> int:
        return self.keyframes[-1].t_ms


@dataclass(frozen=True)
class VisualObject:
    """A categorized on-screen object; its category label carries a frame + LU."""

    id: str
    document: str
    cv_name: str
    category_frame: str
    category_lu: LexicalUnit
    track: BoundingBoxTrack


class Provenance(str, Enum):
    MANUAL = "manual"
    CLASSIFIER = "classifier"


@dataclass(frozen=True)
class GestureAnnotation:
    """A gesture event grouping one or more visual objects (e.g. hand + head)."""

    id: str
    document: str
    members: tuple[str, ...]
    features: GestureFeatures
    evoked_frame: Optional[str] = None
    fe_assignment: tuple[tuple[str, str], ...] = ()
    provenance: Provenance = Provenance.MANUAL
    classifier_verdict: Optional[ClassificationResult] = None
    version: int = 1


def box_at(track: BoundingBoxTrack, t_ms: int) -> BoundingBox:
    """Box readout at time ``t_ms``: exact at keyframes, linear in between."""
    frames = track.keyframes
    if not frames or t_ms < frames[0].t_ms or t_ms > frames[-1].t_ms:
        raise errors.TimeOutsideTrack(
            f"t={t_ms}ms outside track domain [{frames[0].t_ms if frames else '?'}, "
            f"{frames[-1].t_ms if frames else '?'}]"
        )
    for i, kf in enumerate(frames):
        if kf.t_ms == t_ms:
            return kf.box
        if kf.t_ms > t_ms:
            prev = frames[i - 1]
            alpha = (t_ms - prev.t_ms) / (kf.t_ms - prev.t_ms)
            return BoundingBox(
                prev.box.x + alpha * (kf.box.x - prev.box.x),
                prev.box.y + alpha * (kf.box.y - prev.box.y),
                prev.box.w + alpha * (kf.box.w - prev.box.w),
                prev.box.h + alpha * (kf.box.h - prev.box.h),
            )
    raise errors.TimeOutsideTrack(f"t={t_ms}ms outside track domain")  # unreachable


def _check_box(box: BoundingBox, entity: str) -> Optional[str]:
    if box.w <= 0 or box.h <= 0:
        return f"{entity}: box width/height must be positive"
    if box.x < 0 or box.y < 0 or box.x + box.w > 1 or box.y + box.h > 1:
        return f"{entity}: box must lie inside the unit square"
    return None


def _check_track(track: BoundingBoxTrack, entity: str) -> list[tuple[str, str]]:
    problems = []
    if not track.keyframes:
        problems.append(("empty_track", f"{entity}: track has no keyframes"))
        return problems
    last_t = None
    for kf in track.keyframes:
        if last_t is not None and kf.t_ms <= last_t:
            problems.append(
                ("bad_keyframe_order", f"{entity}: keyframe timestamps must strictly increase")
            )
        last_t = kf.t_ms
        box_problem = _check_box(kf.box, entity)
        if box_problem:
            problems.append(("bad_box_geometry", box_problem))
    return problems


class AnnotationStore:
    """Holds one corpus: an ontology plus all annotation records."""

    def __init__(self, ontology: Optional[Ontology] = None):
        self.ontology = ontology if ontology is not None else Ontology()
        self.documents: dict[str, Document] = {}
        self.sentences: dict[str, Sentence] = {}
        self.annotation_sets: dict[str, AnnotationSet] = {}
        self.visual_objects: dict[str, VisualObject] = {}
        self.gestures: dict[str, GestureAnnotation] = {}
        self._lock = threading.RLock()

    # -- documents and sentences ----------------------------------------------

    def add_document(
        self, document_id: str, title: str, duration_ms: int, width_px: int, height_px: int
    ) -> Document:
        if not document_id:
            raise errors.EmptyName("document id must be non-empty")
        if duration_ms < 0 or width_px <= 0 or height_px <= 0:
            raise errors.InvalidInputError("media must have duration >= 0 and positive dimensions")
        with self._lock:
            if document_id in self.documents:
                raise errors.DuplicateId(f"document {document_id!r} already present")
            doc = Document(document_id, title, MediaInfo(duration_ms, width_px, height_px))
            self.documents[document_id] = doc
        return doc

    def add_sentence(
        self,
        sentence_id: str,
        document: Union[Document, str],
        text: str,
        time_span_ms: Optional[Span] = None,
    ) -> Sentence:
        doc_id = document.id if isinstance(document, Document) else document
        with self._lock:
            doc = self.documents.get(doc_id)
            if doc is None:
                raise errors.UnknownDocument(f"document {doc_id!r} not present")
            if sentence_id in self.sentences:
                raise errors.DuplicateId(f"sentence {sentence_id!r} already present")
            if time_span_ms is not None:
                start, end = time_span_ms
                if start >= end:
                    raise errors.EmptyInterval("sentence time span must satisfy start < end")
                if start < 0 or end > doc.media.duration_ms:
                    raise errors.SpanOutOfBounds(
                        f"sentence span [{start}, {end}) exceeds document duration "
                        f"{doc.media.duration_ms}ms"
                    )
                time_span_ms = (start, end)
            sentence = Sentence(sentence_id, doc_id, text, time_span_ms)
            self.sentences[sentence_id] = sentence
        return sentence

    def sentences_for_document(self, document: Union[Document, str]) -> list[Sentence]:
        doc_id = document.id if isinstance(document, Document) else document
        return sorted(
            (s for s in self.sentences.values() if s.document == doc_id), key=lambda s: s.id
        )

    # -- text annotation --------------------------------------------------------

    def create_annotation_set(
        self,
        sentence: Union[Sentence, str],
        lu: Union[LexicalUnit, tuple],
        target_span: Span,
        fe_labels: Iterable[tuple[str, Span]] = (),
        set_id: Optional[str] = None,
    ) -> AnnotationSet:
        sent_id = sentence.id if isinstance(sentence, Sentence) else sentence
        with self._lock:
            sent = self.sentences.get(sent_id)
            if sent is None:
                raise errors.UnknownSentence(f"sentence {sent_id!r} not present")
            if isinstance(lu, LexicalUnit):
                lemma, pos, frame = lu.lemma, lu.pos, lu.frame
            else:
                lemma, pos, frame = lu
            unit = self.ontology.lexical_unit(lemma, PartOfSpeech(pos), frame)
            labels = tuple((name, (int(s), int(e))) for name, (s, e) in fe_labels)

            limit = len(sent.text)
            for name, (start, end) in ((None, target_span),) + labels:
                if not (0 <= start < end <= limit):
                    what = "target span" if name is None else f"FE span {name!r}"
                    raise errors.SpanOutOfBounds(
                        f"{what} [{start}, {end}) outside [0, {limit}) of sentence text"
                    )
            effective = set(self.ontology.effective_fe_names(unit.frame))
            for name, _ in labels:
                if name not in effective:
                    raise errors.UnknownFrameElement(
                        f"{name!r} is not a frame element available on frame {unit.frame!r}"
                    )
            ordered = sorted(labels, key=lambda pair: pair[1])
            for (name_a, span_a), (name_b, span_b) in zip(ordered, ordered[1:]):
                if span_b[0] < span_a[1]:
                    raise errors.OverlappingFeSpans(
                        f"FE spans {name_a!r} and {name_b!r} overlap"
                    )
            set_id = set_id or self._fresh_id("as", self.annotation_sets)
            if set_id in self.annotation_sets:
                raise errors.DuplicateId(f"annotation set {set_id!r} already present")
            record = AnnotationSet(
                set_id, sent_id, unit, (int(target_span[0]), int(target_span[1])), labels
            )
            self.annotation_sets[set_id] = record
        return record

    def annotation_sets_for_sentence(self, sentence: Union[Sentence, str]) -> list[AnnotationSet]:
        sent_id = sentence.id if isinstance(sentence, Sentence) else sentence
        return sorted(
            (a for a in self.annotation_sets.values() if a.sentence == sent_id),
            key=lambda a: a.id,
        )

    def annotation_sets_for_frame(self, frame_name: str) -> list[AnnotationSet]:
        return sorted(
            (a for a in self.annotation_sets.values() if a.lu.frame == frame_name),
            key=lambda a: a.id,
        )

    # -- visual objects and gestures --------------------------------------------

    def add_visual_object(
        self,
        object_id: str,
        document: Union[Document, str],
        cv_name: str,
        category_frame: str,
        category_lu: Union[LexicalUnit, tuple],
        track: BoundingBoxTrack,
    ) -> VisualObject:
        doc_id = document.id if isinstance(document, Document) else document
        with self._lock:
            doc = self.documents.get(doc_id)
            if doc is None:
                raise errors.UnknownDocument(f"document {doc_id!r} not present")
            if object_id in self.visual_objects:
                raise errors.DuplicateId(f"visual object {object_id!r} already present")
            self.ontology.frame(category_frame)
            if isinstance(category_lu, LexicalUnit):
                lemma, pos, frame = category_lu.lemma, category_lu.pos, category_lu.frame
            else:
                lemma, pos, frame = category_lu
            unit = self.ontology.lexical_unit(lemma, PartOfSpeech(pos), frame)
            if unit.frame != category_frame:
                raise errors.InvalidInputError(
                    f"category LU {unit} does not evoke category frame {category_frame!r}"
                )
            problems = _check_track(track, f"visual_object:{object_id}")
            if problems:
                rule, message = problems[0]
                raise {
                    "bad_keyframe_order": errors.BadKeyframeOrder,
                    "bad_box_geometry": errors.BadBoxGeometry,
                }.get(rule, errors.InvalidInputError)(message)
            if track.end_ms > doc.media.duration_ms or track.start_ms < 0:
                raise errors.SpanOutOfBounds(
                    f"track [{track.start_ms}, {track.end_ms}] exceeds document duration "
                    f"{doc.media.duration_ms}ms"
                )
            obj = VisualObject(object_id, doc_id, cv_name, category_frame, unit, track)
            self.visual_objects[object_id] = obj
        return obj

    def check_track_fits(self, object_id: str, track: BoundingBoxTrack) -> None:
        """Validate a replacement track against the object's document without
        applying it; raises like add_visual_object would."""
        obj = self.visual_objects.get(object_id)
        if obj is None:
            raise errors.UnknownVisualObject(f"visual object {object_id!r} not present")
        doc = self.documents[obj.document]
        problems = _check_track(track, f"visual_object:{object_id}")
        if problems:
            rule, message = problems[0]
            raise {
                "bad_keyframe_order": errors.BadKeyframeOrder,
                "bad_box_geometry": errors.BadBoxGeometry,
            }.get(rule, errors.InvalidInputError)(message)
        if track.end_ms > doc.media.duration_ms or track.start_ms < 0:
            raise errors.SpanOutOfBounds(
                f"track [{track.start_ms}, {track.end_ms}] exceeds document duration "
                f"{doc.media.duration_ms}ms"
            )

    def update_visual_object_track(self, object_id: str, track: BoundingBoxTrack) -> VisualObject:
        with self._lock:
            self.check_track_fits(object_id, track)
            updated = replace(self.visual_objects[object_id], track=track)
            self.visual_objects[object_id] = updated
        return updated

    def create_gesture(
        self,
        document: Union[Document, str],
        members: Sequence[Union[VisualObject, str]],
        features: GestureFeatures,
        fe_assignment: Iterable[tuple[str, str]] = (),
        evoked_frame: Optional[str] = None,
        gesture_id: Optional[str] = None,
        provenance: Provenance = Provenance.MANUAL,
        classifier_verdict: Optional[ClassificationResult] = None,
    ) -> GestureAnnotation:
        doc_id = document.id if isinstance(document, Document) else document
        member_ids = tuple(m.id if isinstance(m, VisualObject) else m for m in members)
        with self._lock:
            if doc_id not in self.documents:
                raise errors.UnknownDocument(f"document {doc_id!r} not present")
            gesture_id = gesture_id or self._fresh_id("g", self.gestures)
            if gesture_id in self.gestures:
                raise errors.DuplicateId(f"gesture {gesture_id!r} already present")
            record = GestureAnnotation(
                gesture_id,
                doc_id,
                member_ids,
                features,
                evoked_frame,
                tuple((fe, who) for fe, who in fe_assignment),
                Provenance(provenance),
                classifier_verdict,
            )
            self._check_gesture(record)
            self.gestures[gesture_id] = record
        return record

    def update_gesture(
        self, gesture_id: str, updated: GestureAnnotation, expected_version: int
    ) -> GestureAnnotation:
        """Replace a gesture record; fails without touching state if the caller's
        version is stale."""
        with self._lock:
            current = self.gestures.get(gesture_id)
            if current is None:
                raise errors.UnknownGesture(f"gesture {gesture_id!r} not present")
            if expected_version != current.version:
                raise errors.StaleVersion(
                    f"gesture {gesture_id!r} is at version {current.version}, "
                    f"caller has {expected_version}"
                )
            record = replace(updated, id=gesture_id, version=current.version + 1)
            self._check_gesture(record)
            self.gestures[gesture_id] = record
        return record

    def _check_gesture(self, record: GestureAnnotation) -> None:
        if not record.members:
            raise errors.EmptyMembers("a gesture needs at least one member object")
        member_objs = []
        for member_id in record.members:
            obj = self.visual_objects.get(member_id)
            if obj is None:
                raise errors.UnknownVisualObject(f"visual object {member_id!r} not present")
            member_objs.append(obj)
        docs = {obj.document for obj in member_objs}
        if docs != {record.document}:
            raise errors.CrossDocumentMembers(
                f"gesture members span documents {sorted(docs)}, expected {record.document!r}"
            )
        start = min(obj.track.start_ms for obj in member_objs)
        end = max(obj.track.end_ms for obj in member_objs)
        if end <= start:
            raise errors.EmptyInterval("gesture members cover an empty time extent")
        if record.evoked_frame is None:
            if record.fe_assignment:
                raise errors.UnknownFrameElement(
                    "FE assignment requires an evoked frame to be set"
                )
            return
        frame = self.ontology.frame(record.evoked_frame)
        if frame.kind is not FrameKind.PRAGMATIC:
            raise errors.NonPragmaticFrame(
                f"gestures evoke pragmatic frames; {frame.name!r} is {frame.kind.value}"
            )
        effective = set(self.ontology.effective_fe_names(frame.name))
        for fe_name, _ in record.fe_assignment:
            if fe_name not in effective:
                raise errors.UnknownFrameElement(
                    f"{fe_name!r} is not a frame element available on {frame.name!r}"
                )

    def gesture_extent(self, gesture: Union[GestureAnnotation, str]) -> Span:
        """Half-open [min member start, max member end) in ms."""
        record = self.gestures[gesture] if isinstance(gesture, str) else gesture
        tracks = [self.visual_objects[m].track for m in record.members]
        return (min(t.start_ms for t in tracks), max(t.end_ms for t in tracks))

    def _fresh_id(self, prefix: str, existing: dict) -> str:
        n = len(existing) + 1
        while f"{prefix}{n}" in existing:
            n += 1
        return f"{prefix}{n}"

    # -- validation ---------------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Re-check every invariant of the ontology and of every stored record."""
        report = self.ontology.validate()
        for doc in self.documents.values():
            entity = f"document:{doc.id}"
            if doc.media.duration_ms < 0:
                report.add("bad_media", entity, "duration must be >= 0")
            if doc.media.width_px <= 0 or doc.media.height_px <= 0:
                report.add("bad_media", entity, "media dimensions must be positive")
        for sent in self.sentences.values():
            entity = f"sentence:{sent.id}"
            doc = self.documents.get(sent.document)
            if doc is None:
                report.add("dangling_reference", entity, f"missing document {sent.document!r}")
            if sent.time_span_ms is not None:
                start, end = sent.time_span_ms
                if start >= end:
                    report.add("empty_interval", entity, "time span start must precede end")
                elif doc is not None and (start < 0 or end > doc.media.duration_ms):
                    report.add("span_out_of_bounds", entity, "time span exceeds document duration")
        for aset in self.annotation_sets.values():
            self._validate_annotation_set(aset, report)
        for obj in self.visual_objects.values():
            self._validate_visual_object(obj, report)
        for gesture in self.gestures.values():
            self._validate_gesture(gesture, report)
        return report

    def _validate_annotation_set(self, aset: AnnotationSet, report: ValidationReport) -> None:
        entity = f"annotation_set:{aset.id}"
        sent = self.sentences.get(aset.sentence)
        if sent is None:
            report.add("dangling_reference", entity, f"missing sentence {aset.sentence!r}")
            return
        if aset.lu.key not in self.ontology.lexical_units:
            report.add("dangling_reference", entity, f"missing lexical unit {aset.lu}")
            return
        limit = len(sent.text)
        spans = [("target", aset.target_span)] + [(name, span) for name, span in aset.fe_labels]
        for name, (start, end) in spans:
            if not (0 <= start < end <= limit):
                report.add("span_out_of_bounds", entity, f"{name} span outside sentence text")
        if aset.lu.frame in self.ontology.frames:
            effective = set(self.ontology.effective_fe_names(aset.lu.frame))
            for name, _ in aset.fe_labels:
                if name not in effective:
                    report.add(
                        "unknown_frame_element", entity, f"{name!r} not available on {aset.lu.frame!r}"
                    )
        ordered = sorted(aset.fe_labels, key=lambda pair: pair[1])
        for (_, span_a), (_, span_b) in zip(ordered, ordered[1:]):
            if span_b[0] < span_a[1]:
                report.add("overlapping_fe_spans", entity, "FE spans overlap")

    def _validate_visual_object(self, obj: VisualObject, report: ValidationReport) -> None:
        entity = f"visual_object:{obj.id}"
        doc = self.documents.get(obj.document)
        if doc is None:
            report.add("dangling_reference", entity, f"missing document {obj.document!r}")
        if obj.category_frame not in self.ontology.frames:
            report.add("dangling_reference", entity, f"missing frame {obj.category_frame!r}")
        if obj.category_lu.key not in self.ontology.lexical_units:
            report.add("dangling_reference", entity, f"missing lexical unit {obj.category_lu}")
        elif obj.category_lu.frame != obj.category_frame:
            report.add(
                "category_mismatch",
                entity,
                f"category LU evokes {obj.category_lu.frame!r}, not {obj.category_frame!r}",
            )
        for rule, message in _check_track(obj.track, entity):
            report.add(rule, entity, message)
        if obj.track.keyframes and doc is not None:
            if obj.track.start_ms < 0 or obj.track.end_ms > doc.media.duration_ms:
                report.add("span_out_of_bounds", entity, "track exceeds document duration")

    def _validate_gesture(self, gesture: GestureAnnotation, report: ValidationReport) -> None:
        entity = f"gesture:{gesture.id}"
        if not gesture.members:
            report.add("empty_members", entity, "gesture has no member objects")
        member_docs = set()
        extents = []
        for member_id in gesture.members:
            obj = self.visual_objects.get(member_id)
            if obj is None:
                report.add("dangling_reference", entity, f"missing visual object {member_id!r}")
                continue
            member_docs.add(obj.document)
            if obj.track.keyframes:
                extents.append((obj.track.start_ms, obj.track.end_ms))
        if member_docs and member_docs != {gesture.document}:
            report.add("cross_document_members", entity, "members span multiple documents")
        if extents and max(e for _, e in extents) <= min(s for s, _ in extents):
            report.add("empty_interval", entity, "gesture time extent is empty")
        if gesture.version < 1:
            report.add("bad_version", entity, "version must be >= 1")
        if gesture.evoked_frame is None:
            if gesture.fe_assignment:
                report.add(
                    "unknown_frame_element", entity, "FE assignment without an evoked frame"
                )
            return
        frame = self.ontology.frames.get(gesture.evoked_frame)
        if frame is None:
            report.add("dangling_reference", entity, f"missing frame {gesture.evoked_frame!r}")
            return
        if frame.kind is not FrameKind.PRAGMATIC:
            report.add("non_pragmatic_frame", entity, f"{frame.name!r} is not pragmatic")
        effective = set(self.ontology.effective_fe_names(frame.name))
        for fe_name, _ in gesture.fe_assignment:
            if fe_name not in effective:
                report.add(
                    "unknown_frame_element", entity, f"{fe_name!r} not available on {frame.name!r}"
                )
