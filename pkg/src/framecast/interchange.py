"""Canonical interchange format.

One UTF-8 JSON document per store: ``schema_version`` plus the collections
(``frames``, ``lexical_units``, ``relations``, ``documents``, ``sentences``,
``annotation_sets``, ``visual_objects``, ``gestures``). Canonical form: keys
sorted lexicographically, arrays in id order, empty collections and null
fields omitted, box coordinates quantized to at most six decimals, rationals
written exactly as fraction strings. Export is byte-deterministic: equal
stores serialize to equal bytes.

Prototype tables (key ``prototypes``) and blending networks (key
``networks``) ride the same format in their own documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from . import errors
from .blendnet import CrossSpaceMapping, IntegrationNetwork, MentalSpace
from .classifier import ClassificationResult, Interactivity, Prototype
from .features import BOOL_FIELDS, ENUM_FIELDS, GestureFeatures
from .ontology import (
    Coreness,
    Frame,
    FrameElement,
    FrameKind,
    FrameRelation,
    LexicalUnit,
    Ontology,
    PartOfSpeech,
    RelationKind,
)
from .store import (
    AnnotationSet,
    AnnotationStore,
    BoundingBox,
    BoundingBoxTrack,
    Document,
    GestureAnnotation,
    Keyframe,
    MediaInfo,
    Provenance,
    Sentence,
    VisualObject,
)

SCHEMA_VERSION = "1"

STORE_KEYS = (
    "frames",
    "lexical_units",
    "relations",
    "documents",
    "sentences",
    "annotation_sets",
    "visual_objects",
    "gestures",
)
TOLERATED_KEYS = ("prototypes", "networks")


def canonical_bytes(payload: dict) -> bytes:
    return (json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode(
        "utf-8"
    )


# -- parse helpers -------------------------------------------------------------


def _obj(value, what: str) -> dict:
    if not isinstance(value, dict):
        raise errors.ParseError(f"{what} must be an object, got {type(value).__name__}")
    return value


def _array(value, what: str) -> list:
    if not isinstance(value, list):
        raise errors.ParseError(f"{what} must be an array, got {type(value).__name__}")
    return value


def _get(record: dict, key: str, what: str, kind: Optional[type] = None, default=...):
    if key not in record:
        if default is ...:
            raise errors.ParseError(f"{what} is missing required field {key!r}")
        return default
    value = record[key]
    if kind is not None and not isinstance(value, kind):
        raise errors.ParseError(f"{what}.{key} must be {kind.__name__}")
    if kind is int and isinstance(value, bool):
        raise errors.ParseError(f"{what}.{key} must be an integer")
    return value


def _check_keys(record: dict, allowed: set, what: str) -> None:
    unknown = set(record) - allowed
    if unknown:
        raise errors.ParseError(f"{what} has unknown field(s): {sorted(unknown)}")


def _enum(enum_cls, value, what: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = [e.value for e in enum_cls]
        raise errors.ParseError(f"{what} must be one of {allowed}, got {value!r}") from None


def _span(value, what: str) -> tuple[int, int]:
    arr = _array(value, what)
    if len(arr) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in arr):
        raise errors.ParseError(f"{what} must be a [start, end] pair of integers")
    return (arr[0], arr[1])


def rational_str(value: Fraction) -> str:
    return str(value)


def parse_rational(value, what: str) -> Fraction:
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(str(value))
        if isinstance(value, str):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise errors.ParseError(f"{what} must be a rational number, got {value!r}")


# -- ontology payloads -----------------------------------------------------------


def frame_to_payload(frame: Frame) -> dict:
    payload: dict[str, Any] = {
        "name": frame.name,
        "definition": frame.definition,
        "kind": frame.kind.value,
    }
    if frame.frame_elements:
        payload["frame_elements"] = [
            {"name": fe.name, "definition": fe.definition, "coreness": fe.coreness.value}
            for fe in frame.frame_elements
        ]
    return payload


def parse_frame(payload) -> Frame:
    record = _obj(payload, "frame")
    _check_keys(record, {"name", "definition", "kind", "frame_elements"}, "frame")
    name = _get(record, "name", "frame", str)
    elements = []
    for raw in _array(record.get("frame_elements", []), f"frame {name!r} frame_elements"):
        fe = _obj(raw, "frame element")
        _check_keys(fe, {"name", "definition", "coreness"}, f"frame element of {name!r}")
        elements.append(
            FrameElement(
                _get(fe, "name", "frame element", str),
                _get(fe, "definition", "frame element", str, default=""),
                _enum(Coreness, _get(fe, "coreness", "frame element", str), "coreness"),
            )
        )
    return Frame(
        name,
        _get(record, "definition", "frame", str, default=""),
        _enum(FrameKind, _get(record, "kind", "frame", str), f"frame {name!r} kind"),
        tuple(elements),
    )


def lu_to_payload(lu: LexicalUnit) -> dict:
    return {"lemma": lu.lemma, "pos": lu.pos.value, "frame": lu.frame}


def parse_lexical_unit(payload, what: str = "lexical unit") -> LexicalUnit:
    record = _obj(payload, what)
    _check_keys(record, {"lemma", "pos", "frame"}, what)
    return LexicalUnit(
        _get(record, "lemma", what, str),
        _enum(PartOfSpeech, _get(record, "pos", what, str), f"{what} pos"),
        _get(record, "frame", what, str),
    )


def relation_to_payload(rel: FrameRelation) -> dict:
    payload: dict[str, Any] = {
        "source": rel.source,
        "kind": rel.kind.value,
        "target": rel.target,
    }
    if rel.fe_bindings:
        payload["fe_bindings"] = [[a, b] for a, b in rel.fe_bindings]
    return payload


def parse_relation(payload) -> FrameRelation:
    record = _obj(payload, "relation")
    _check_keys(record, {"source", "kind", "target", "fe_bindings"}, "relation")
    bindings = []
    for raw in _array(record.get("fe_bindings", []), "relation fe_bindings"):
        pair = _array(raw, "fe_binding")
        if len(pair) != 2 or not all(isinstance(p, str) for p in pair):
            raise errors.ParseError("fe_binding must be a [source_fe, target_fe] pair of strings")
        bindings.append((pair[0], pair[1]))
    return FrameRelation(
        _get(record, "source", "relation", str),
        _enum(RelationKind, _get(record, "kind", "relation", str), "relation kind"),
        _get(record, "target", "relation", str),
        tuple(bindings),
    )


# -- store payloads -----------------------------------------------------------------


def document_to_payload(doc: Document) -> dict:
    return {
        "id": doc.id,
        "title": doc.title,
        "media": {
            "duration_ms": doc.media.duration_ms,
            "width_px": doc.media.width_px,
            "height_px": doc.media.height_px,
        },
    }


def parse_document(payload) -> Document:
    record = _obj(payload, "document")
    _check_keys(record, {"id", "title", "media"}, "document")
    media = _obj(_get(record, "media", "document"), "document media")
    _check_keys(media, {"duration_ms", "width_px", "height_px"}, "document media")
    return Document(
        _get(record, "id", "document", str),
        _get(record, "title", "document", str, default=""),
        MediaInfo(
            _get(media, "duration_ms", "media", int),
            _get(media, "width_px", "media", int),
            _get(media, "height_px", "media", int),
        ),
    )


def sentence_to_payload(sent: Sentence) -> dict:
    payload: dict[str, Any] = {"id": sent.id, "document": sent.document, "text": sent.text}
    if sent.time_span_ms is not None:
        payload["time_span_ms"] = list(sent.time_span_ms)
    return payload


def parse_sentence(payload) -> Sentence:
    record = _obj(payload, "sentence")
    _check_keys(record, {"id", "document", "text", "time_span_ms"}, "sentence")
    span = record.get("time_span_ms")
    return Sentence(
        _get(record, "id", "sentence", str),
        _get(record, "document", "sentence", str),
        _get(record, "text", "sentence", str),
        None if span is None else _span(span, "sentence.time_span_ms"),
    )


def annotation_set_to_payload(aset: AnnotationSet) -> dict:
    payload: dict[str, Any] = {
        "id": aset.id,
        "sentence": aset.sentence,
        "lu": lu_to_payload(aset.lu),
        "target_span": list(aset.target_span),
    }
    if aset.fe_labels:
        payload["fe_labels"] = [{"fe": name, "span": list(span)} for name, span in aset.fe_labels]
    return payload


def parse_annotation_set(payload) -> AnnotationSet:
    record = _obj(payload, "annotation set")
    _check_keys(record, {"id", "sentence", "lu", "target_span", "fe_labels"}, "annotation set")
    labels = []
    for raw in _array(record.get("fe_labels", []), "fe_labels"):
        label = _obj(raw, "fe label")
        _check_keys(label, {"fe", "span"}, "fe label")
        labels.append(
            (_get(label, "fe", "fe label", str), _span(_get(label, "span", "fe label"), "fe span"))
        )
    return AnnotationSet(
        _get(record, "id", "annotation set", str),
        _get(record, "sentence", "annotation set", str),
        parse_lexical_unit(_get(record, "lu", "annotation set"), "annotation set lu"),
        _span(_get(record, "target_span", "annotation set"), "target_span"),
        tuple(labels),
    )


def track_to_payload(track: BoundingBoxTrack) -> dict:
    return {
        "keyframes": [
            {
                "t_ms": kf.t_ms,
                "box": {"x": kf.box.x, "y": kf.box.y, "w": kf.box.w, "h": kf.box.h},
            }
            for kf in track.keyframes
        ]
    }


def parse_track(payload, what: str = "track") -> BoundingBoxTrack:
    record = _obj(payload, what)
    _check_keys(record, {"keyframes"}, what)
    keyframes = []
    for raw in _array(_get(record, "keyframes", what), f"{what}.keyframes"):
        kf = _obj(raw, "keyframe")
        _check_keys(kf, {"t_ms", "box"}, "keyframe")
        box = _obj(_get(kf, "box", "keyframe"), "keyframe box")
        _check_keys(box, {"x", "y", "w", "h"}, "box")
        coords = {}
        for axis in ("x", "y", "w", "h"):
            value = _get(box, axis, "box")
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise errors.ParseError(f"box.{axis} must be a number")
            coords[axis] = float(value)
        keyframes.append(Keyframe(_get(kf, "t_ms", "keyframe", int), BoundingBox(**coords)))
    return BoundingBoxTrack(tuple(keyframes))


def visual_object_to_payload(obj: VisualObject) -> dict:
    return {
        "id": obj.id,
        "document": obj.document,
        "cv_name": obj.cv_name,
        "category_frame": obj.category_frame,
        "category_lu": lu_to_payload(obj.category_lu),
        "track": track_to_payload(obj.track),
    }


def parse_visual_object(payload) -> VisualObject:
    record = _obj(payload, "visual object")
    _check_keys(
        record,
        {"id", "document", "cv_name", "category_frame", "category_lu", "track"},
        "visual object",
    )
    return VisualObject(
        _get(record, "id", "visual object", str),
        _get(record, "document", "visual object", str),
        _get(record, "cv_name", "visual object", str),
        _get(record, "category_frame", "visual object", str),
        parse_lexical_unit(_get(record, "category_lu", "visual object"), "category_lu"),
        parse_track(_get(record, "track", "visual object")),
    )


def features_to_payload(features: GestureFeatures) -> dict:
    payload: dict[str, Any] = {}
    for fname in BOOL_FIELDS:
        payload[fname] = getattr(features, fname)
    if features.paraphrase is not None:
        payload["paraphrase"] = features.paraphrase
    for fname, enum_cls in ENUM_FIELDS.items():
        payload[fname] = getattr(features, fname).value
    return payload


def parse_features(payload) -> GestureFeatures:
    record = _obj(payload, "features")
    allowed = set(BOOL_FIELDS) | set(ENUM_FIELDS) | {"paraphrase"}
    _check_keys(record, allowed, "features")
    kwargs: dict[str, Any] = {}
    for fname in BOOL_FIELDS:
        kwargs[fname] = _get(record, fname, "features", bool)
    paraphrase = record.get("paraphrase")
    if paraphrase is not None and not isinstance(paraphrase, str):
        raise errors.ParseError("features.paraphrase must be a string")
    kwargs["paraphrase"] = paraphrase
    for fname, enum_cls in ENUM_FIELDS.items():
        kwargs[fname] = _enum(enum_cls, _get(record, fname, "features", str), f"features.{fname}")
    try:
        return GestureFeatures(**kwargs)
    except errors.InvalidInputError as exc:
        raise errors.ParseError(f"features: {exc.message}") from None


def result_to_payload(result: ClassificationResult) -> dict:
    payload: dict[str, Any] = {
        "interactivity": result.interactivity.value,
        "ranking": [
            {"frame": frame, "score": rational_str(score)} for frame, score in result.ranking
        ],
        "margin": rational_str(result.margin),
    }
    if result.verdict is not None:
        payload["verdict"] = result.verdict
    return payload


def parse_classification_result(payload) -> ClassificationResult:
    record = _obj(payload, "classification result")
    _check_keys(record, {"interactivity", "ranking", "margin", "verdict"}, "classification result")
    ranking = []
    for raw in _array(_get(record, "ranking", "classification result"), "ranking"):
        entry = _obj(raw, "ranking entry")
        _check_keys(entry, {"frame", "score"}, "ranking entry")
        ranking.append(
            (
                _get(entry, "frame", "ranking entry", str),
                parse_rational(_get(entry, "score", "ranking entry"), "ranking score"),
            )
        )
    verdict = record.get("verdict")
    if verdict is not None and not isinstance(verdict, str):
        raise errors.ParseError("classification result verdict must be a string")
    try:
        return ClassificationResult(
            _enum(Interactivity, _get(record, "interactivity", "result", str), "interactivity"),
            tuple(ranking),
            verdict,
            parse_rational(_get(record, "margin", "classification result"), "margin"),
        )
    except errors.InvalidInputError as exc:
        raise errors.ParseError(f"classification result: {exc.message}") from None


def gesture_to_payload(gesture: GestureAnnotation) -> dict:
    payload: dict[str, Any] = {
        "id": gesture.id,
        "document": gesture.document,
        "members": list(gesture.members),
        "features": features_to_payload(gesture.features),
        "provenance": gesture.provenance.value,
        "version": gesture.version,
    }
    if gesture.evoked_frame is not None:
        payload["evoked_frame"] = gesture.evoked_frame
    if gesture.fe_assignment:
        payload["fe_assignment"] = [
            {"fe": fe, "participant": who} for fe, who in gesture.fe_assignment
        ]
    if gesture.classifier_verdict is not None:
        payload["classifier_verdict"] = result_to_payload(gesture.classifier_verdict)
    return payload


def parse_gesture(payload, require_id: bool = True) -> GestureAnnotation:
    record = _obj(payload, "gesture")
    _check_keys(
        record,
        {
            "id",
            "document",
            "members",
            "features",
            "evoked_frame",
            "fe_assignment",
            "provenance",
            "classifier_verdict",
            "version",
        },
        "gesture",
    )
    members = _array(_get(record, "members", "gesture"), "gesture.members")
    if not all(isinstance(m, str) for m in members):
        raise errors.ParseError("gesture.members must be an array of visual object ids")
    assignment = []
    for raw in _array(record.get("fe_assignment", []), "fe_assignment"):
        entry = _obj(raw, "fe assignment")
        _check_keys(entry, {"fe", "participant"}, "fe assignment")
        assignment.append(
            (
                _get(entry, "fe", "fe assignment", str),
                _get(entry, "participant", "fe assignment", str),
            )
        )
    evoked = record.get("evoked_frame")
    if evoked is not None and not isinstance(evoked, str):
        raise errors.ParseError("gesture.evoked_frame must be a string")
    verdict = record.get("classifier_verdict")
    gesture_id = _get(record, "id", "gesture", str) if require_id else record.get("id", "")
    return GestureAnnotation(
        gesture_id,
        _get(record, "document", "gesture", str),
        tuple(members),
        parse_features(_get(record, "features", "gesture")),
        evoked,
        tuple(assignment),
        _enum(Provenance, _get(record, "provenance", "gesture", str, default="manual"), "provenance"),
        None if verdict is None else parse_classification_result(verdict),
        _get(record, "version", "gesture", int, default=1),
    )


# -- whole-store export / import ---------------------------------------------------


def store_to_payload(store: AnnotationStore) -> dict:
    payload: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    ontology = store.ontology
    if ontology.frames:
        payload["frames"] = [
            frame_to_payload(ontology.frames[name]) for name in sorted(ontology.frames)
        ]
    if ontology.lexical_units:
        payload["lexical_units"] = [
            lu_to_payload(ontology.lexical_units[key]) for key in sorted(ontology.lexical_units)
        ]
    if ontology.relations:
        ordered = sorted(
            ontology.relations, key=lambda r: (r.source, r.kind.value, r.target, r.fe_bindings)
        )
        payload["relations"] = [relation_to_payload(rel) for rel in ordered]
    if store.documents:
        payload["documents"] = [
            document_to_payload(store.documents[k]) for k in sorted(store.documents)
        ]
    if store.sentences:
        payload["sentences"] = [
            sentence_to_payload(store.sentences[k]) for k in sorted(store.sentences)
        ]
    if store.annotation_sets:
        payload["annotation_sets"] = [
            annotation_set_to_payload(store.annotation_sets[k])
            for k in sorted(store.annotation_sets)
        ]
    if store.visual_objects:
        payload["visual_objects"] = [
            visual_object_to_payload(store.visual_objects[k])
            for k in sorted(store.visual_objects)
        ]
    if store.gestures:
        payload["gestures"] = [gesture_to_payload(store.gestures[k]) for k in sorted(store.gestures)]
    return payload


def export_store(store: AnnotationStore) -> bytes:
    """Canonical bytes for a valid store; raises ValidationFailed otherwise."""
    report = store.validate()
    if not report.ok:
        raise errors.ValidationFailed(report)
    return canonical_bytes(store_to_payload(store))


def payload_from_bytes(data: Union[bytes, str]) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise errors.ParseError(f"document is not valid UTF-8: {exc}") from None
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"document is not well-formed: {exc}") from None
    return _obj(payload, "interchange document")


def _check_schema_version(payload: dict) -> None:
    version = _get(payload, "schema_version", "interchange document", str)
    if version != SCHEMA_VERSION:
        raise errors.SchemaVersionUnsupported(
            f"schema_version {version!r} is not supported (expected {SCHEMA_VERSION!r})"
        )


def store_from_payload(payload: dict) -> AnnotationStore:
    _check_keys(
        payload,
        {"schema_version", *STORE_KEYS, *TOLERATED_KEYS},
        "interchange document",
    )
    _check_schema_version(payload)
    store = AnnotationStore(Ontology())
    ontology = store.ontology
    for raw in _array(payload.get("frames", []), "frames"):
        frame = parse_frame(raw)
        if frame.name in ontology.frames:
            raise errors.ParseError(f"duplicate frame {frame.name!r}")
        ontology.frames[frame.name] = frame
    for raw in _array(payload.get("lexical_units", []), "lexical_units"):
        lu = parse_lexical_unit(raw)
        if lu.key in ontology.lexical_units:
            raise errors.ParseError(f"duplicate lexical unit {lu}")
        ontology.lexical_units[lu.key] = lu
    seen_relations = set()
    for raw in _array(payload.get("relations", []), "relations"):
        rel = parse_relation(raw)
        if rel.key in seen_relations:
            raise errors.ParseError(f"duplicate relation {rel.key}")
        seen_relations.add(rel.key)
        ontology.relations.append(rel)
    for collection, parser, target in (
        ("documents", parse_document, store.documents),
        ("sentences", parse_sentence, store.sentences),
        ("annotation_sets", parse_annotation_set, store.annotation_sets),
        ("visual_objects", parse_visual_object, store.visual_objects),
        ("gestures", parse_gesture, store.gestures),
    ):
        for raw in _array(payload.get(collection, []), collection):
            record = parser(raw)
            if record.id in target:
                raise errors.ParseError(f"duplicate id {record.id!r} in {collection}")
            target[record.id] = record
    return store


def import_store(data: Union[bytes, str]) -> AnnotationStore:
    """Parse and validate an interchange document into a store."""
    store = store_from_payload(payload_from_bytes(data))
    report = store.validate()
    if not report.ok:
        raise errors.ValidationFailed(report)
    return store


# -- prototype tables ---------------------------------------------------------------


def prototype_to_payload(prototype: Prototype) -> dict:
    template = {}
    for fname in sorted(prototype.template):
        allowed = prototype.allowed_values(fname)
        template[fname] = allowed[0] if len(allowed) == 1 else list(allowed)
    return {
        "frame": prototype.frame,
        "template": template,
        "weights": {k: rational_str(v) for k, v in sorted(prototype.weights.items())},
    }


def parse_prototype(payload) -> Prototype:
    record = _obj(payload, "prototype")
    _check_keys(record, {"frame", "template", "weights"}, "prototype")
    template_raw = _obj(_get(record, "template", "prototype"), "prototype template")
    template = {}
    for fname, value in template_raw.items():
        template[fname] = tuple(value) if isinstance(value, list) else value
    weights = {
        k: parse_rational(v, f"weight {k!r}")
        for k, v in _obj(record.get("weights", {}), "prototype weights").items()
    }
    try:
        return Prototype(_get(record, "frame", "prototype", str), template, weights)
    except errors.InvalidInputError as exc:
        raise errors.ParseError(f"prototype: {exc.message}") from None


def prototypes_to_document(prototypes: Sequence[Prototype]) -> dict:
    ordered = sorted(prototypes, key=lambda p: p.frame)
    return {
        "schema_version": SCHEMA_VERSION,
        "prototypes": [prototype_to_payload(p) for p in ordered],
    }


def load_prototypes(data: Union[bytes, str]) -> list[Prototype]:
    payload = payload_from_bytes(data)
    _check_keys(payload, {"schema_version", "prototypes"}, "prototype document")
    _check_schema_version(payload)
    return [parse_prototype(raw) for raw in _array(payload.get("prototypes", []), "prototypes")]


# -- blending networks ----------------------------------------------------------------


def space_to_payload(space: MentalSpace) -> dict:
    payload: dict[str, Any] = {"id": space.id, "label": space.label, "kind": space.kind.value}
    if space.structuring_frame is not None:
        payload["structuring_frame"] = space.structuring_frame.name
    if space.elements:
        elements = []
        for element in space.elements:
            entry: dict[str, Any] = {"id": element.id, "label": element.label}
            if element.role is not None:
                entry["role"] = element.role
            elements.append(entry)
        payload["elements"] = elements
    return payload


def mapping_to_payload(mapping: CrossSpaceMapping) -> dict:
    return {
        "space_a": mapping.space_a.id,
        "space_b": mapping.space_b.id,
        "pairs": [[a, b] for a, b in sorted(mapping.pairs)],
    }


def network_to_payload(network: IntegrationNetwork) -> dict:
    payload: dict[str, Any] = {
        "inputs": [space_to_payload(space) for space in network.inputs],
        "blend": space_to_payload(network.blend),
    }
    if network.generic is not None:
        payload["generic"] = space_to_payload(network.generic)
    if network.mappings:
        payload["mappings"] = [mapping_to_payload(m) for m in network.mappings]
    if network.projections:
        ordered = sorted(
            network.projections,
            key=lambda p: (p.blend_element, p.source_space, p.source_element),
        )
        payload["projections"] = [
            {
                "source_space": p.source_space,
                "source_element": p.source_element,
                "blend_element": p.blend_element,
            }
            for p in ordered
        ]
    return payload


def networks_to_document(networks: Sequence[IntegrationNetwork]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "networks": [network_to_payload(n) for n in networks],
    }
