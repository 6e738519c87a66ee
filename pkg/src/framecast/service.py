"""HTTP front door for the workbench.

One service hosts one store. Reads are concurrent; each mutation is applied
under a service-level lock and persisted with write-then-rename, so the store
file on disk is always a complete, valid document. Gesture writes use
optimistic concurrency via per-record integer versions.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Optional, Sequence

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import errors, interchange
from .blendnet import CommunicativeContext, explain_gesture
from .classifier import DEFAULT_DELTA, DEFAULT_TAU, Prototype, classify_turn_frame
from .ontology import PartOfSpeech
from .stats import corpus_summary
from .store import AnnotationStore

_STATUS = {
    "not_found": 404,
    "conflict": 409,
    "validation_failed": 422,
    "bad_request": 400,
}


def _api_error(exc: errors.FramecastError) -> tuple[int, dict]:
    if isinstance(exc, errors.NotFoundError):
        code = "not_found"
    elif isinstance(exc, errors.ConflictError):
        code = "conflict"
    elif isinstance(exc, errors.ParseError):
        code = "bad_request"
    else:
        code = "validation_failed"
    body = {"code": code, "rule_id": exc.rule_id, "message": exc.message}
    return _STATUS[code], body


def summary_to_payload(summary) -> dict:
    return {
        "documents": summary.documents,
        "sentences": summary.sentences,
        "annotation_sets": summary.annotation_sets,
        "visual_objects": summary.visual_objects,
        "gestures": summary.gestures,
        "gestures_by_frame": summary.gestures_by_frame,
        "unclassified_gestures": summary.unclassified_gestures,
    }


def report_to_payload(report) -> dict:
    return {
        "ok": report.ok,
        "findings": [
            {"rule_id": f.rule_id, "entity": f.entity, "message": f.message}
            for f in report.findings
        ],
    }


def parse_context(payload) -> CommunicativeContext:
    if not isinstance(payload, dict):
        raise errors.ParseError("context must be an object")
    known = {"utterer", "comprehender", "time", "place", "interaction_kind", "include_content"}
    unknown = set(payload) - known
    if unknown:
        raise errors.ParseError(f"context has unknown field(s): {sorted(unknown)}")
    for key in ("utterer", "comprehender"):
        if not isinstance(payload.get(key), str) or not payload[key]:
            raise errors.ParseError(f"context.{key} must be a non-empty string")
    include = payload.get("include_content", False)
    if not isinstance(include, bool):
        raise errors.ParseError("context.include_content must be a boolean")
    return CommunicativeContext(
        utterer=payload["utterer"],
        comprehender=payload["comprehender"],
        time=payload.get("time", "now"),
        place=payload.get("place", "here"),
        interaction_kind=payload.get("interaction_kind", "conversation"),
        include_content=include,
    )


def create_app(
    store: AnnotationStore,
    prototypes: Sequence[Prototype],
    store_path: Optional[Path] = None,
) -> FastAPI:
    app = FastAPI(title="framecast", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    write_lock = threading.Lock()

    def persist() -> None:
        if store_path is None:
            return
        data = interchange.export_store(store)
        tmp = store_path.with_name(store_path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, store_path)

    @app.exception_handler(errors.FramecastError)
    async def handle_domain_error(_request: Request, exc: errors.FramecastError):
        status, body = _api_error(exc)
        return JSONResponse(status_code=status, content=body)

    async def read_body(request: Request) -> dict:
        try:
            payload = await request.json()
        except Exception:
            raise errors.ParseError("request body must be a JSON object") from None
        if not isinstance(payload, dict):
            raise errors.ParseError("request body must be a JSON object")
        return payload

    # -- ontology ---------------------------------------------------------------

    @app.get("/frames")
    def list_frames():
        return {
            "frames": [
                interchange.frame_to_payload(store.ontology.frames[name])
                for name in sorted(store.ontology.frames)
            ]
        }

    @app.get("/frames/{name}")
    def get_frame(name: str):
        return interchange.frame_to_payload(store.ontology.frame(name))

    @app.post("/frames", status_code=201)
    async def post_frame(request: Request):
        payload = await read_body(request)
        frame = interchange.parse_frame(payload)
        with write_lock:
            created = store.ontology.define_frame(
                frame.name, frame.definition, frame.kind, frame.frame_elements
            )
            persist()
        return interchange.frame_to_payload(created)

    @app.get("/relations")
    def list_relations():
        ordered = sorted(
            store.ontology.relations, key=lambda r: (r.source, r.kind.value, r.target)
        )
        return {"relations": [interchange.relation_to_payload(r) for r in ordered]}

    @app.post("/relations", status_code=201)
    async def post_relation(request: Request):
        payload = await read_body(request)
        rel = interchange.parse_relation(payload)
        with write_lock:
            created = store.ontology.add_relation(rel.source, rel.kind, rel.target, rel.fe_bindings)
            persist()
        return interchange.relation_to_payload(created)

    # -- documents and sentences --------------------------------------------------

    @app.get("/documents")
    def list_documents():
        return {
            "documents": [
                interchange.document_to_payload(store.documents[k])
                for k in sorted(store.documents)
            ]
        }

    @app.post("/documents", status_code=201)
    async def post_document(request: Request):
        payload = await read_body(request)
        doc = interchange.parse_document(payload)
        with write_lock:
            created = store.add_document(
                doc.id, doc.title, doc.media.duration_ms, doc.media.width_px, doc.media.height_px
            )
            persist()
        return interchange.document_to_payload(created)

    @app.get("/documents/{document_id}/sentences")
    def list_sentences(document_id: str):
        if document_id not in store.documents:
            raise errors.UnknownDocument(f"document {document_id!r} not present")
        return {
            "sentences": [
                interchange.sentence_to_payload(s)
                for s in store.sentences_for_document(document_id)
            ]
        }

    # -- annotation sets -----------------------------------------------------------

    @app.get("/annotation-sets")
    def list_annotation_sets():
        return {
            "annotation_sets": [
                interchange.annotation_set_to_payload(store.annotation_sets[k])
                for k in sorted(store.annotation_sets)
            ]
        }

    @app.post("/annotation-sets", status_code=201)
    async def post_annotation_set(request: Request):
        payload = await read_body(request)
        payload.setdefault("id", "")
        record = interchange.parse_annotation_set(payload)
        with write_lock:
            created = store.create_annotation_set(
                record.sentence,
                (record.lu.lemma, PartOfSpeech(record.lu.pos), record.lu.frame),
                record.target_span,
                record.fe_labels,
                set_id=record.id or None,
            )
            persist()
        return interchange.annotation_set_to_payload(created)

    # -- visual objects (read-only; writes ride gesture mutations) -----------------

    @app.get("/visual-objects")
    def list_visual_objects():
        return {
            "visual_objects": [
                interchange.visual_object_to_payload(store.visual_objects[k])
                for k in sorted(store.visual_objects)
            ]
        }

    @app.get("/visual-objects/{object_id}")
    def get_visual_object(object_id: str):
        obj = store.visual_objects.get(object_id)
        if obj is None:
            raise errors.UnknownVisualObject(f"visual object {object_id!r} not present")
        return interchange.visual_object_to_payload(obj)

    # -- gestures ---------------------------------------------------------------------

    @app.get("/gestures")
    def list_gestures():
        return {
            "gestures": [
                interchange.gesture_to_payload(store.gestures[k]) for k in sorted(store.gestures)
            ]
        }

    @app.get("/gestures/{gesture_id}")
    def get_gesture(gesture_id: str):
        gesture = store.gestures.get(gesture_id)
        if gesture is None:
            raise errors.UnknownGesture(f"gesture {gesture_id!r} not present")
        return interchange.gesture_to_payload(gesture)

    @app.post("/gestures", status_code=201)
    async def post_gesture(request: Request):
        payload = await read_body(request)
        # The annotation UI sends freshly drawn member objects inline so one
        # request creates the tracks and the gesture grouping them.
        member_objects = [
            interchange.parse_visual_object(raw)
            for raw in payload.pop("member_objects", [])
        ]
        if member_objects and "members" not in payload:
            payload["members"] = [obj.id for obj in member_objects]
        record = interchange.parse_gesture(payload, require_id=False)
        with write_lock:
            created_ids = []
            try:
                for obj in member_objects:
                    store.add_visual_object(
                        obj.id, obj.document, obj.cv_name, obj.category_frame,
                        obj.category_lu, obj.track,
                    )
                    created_ids.append(obj.id)
                created = store.create_gesture(
                    record.document,
                    record.members,
                    record.features,
                    fe_assignment=record.fe_assignment,
                    evoked_frame=record.evoked_frame,
                    gesture_id=record.id or None,
                    provenance=record.provenance,
                    classifier_verdict=record.classifier_verdict,
                )
            except errors.FramecastError:
                for object_id in created_ids:
                    store.visual_objects.pop(object_id, None)
                raise
            persist()
        return interchange.gesture_to_payload(created)

    @app.put("/gestures/{gesture_id}")
    async def put_gesture(gesture_id: str, request: Request):
        payload = await read_body(request)
        payload.setdefault("id", gesture_id)
        # Box edits ride the gesture update: member_tracks maps member object
        # ids to replacement tracks, applied atomically with the version gate.
        member_tracks = {
            object_id: interchange.parse_track(raw, f"member_tracks[{object_id}]")
            for object_id, raw in payload.pop("member_tracks", {}).items()
        }
        record = interchange.parse_gesture(payload)
        with write_lock:
            current = store.gestures.get(gesture_id)
            if current is None:
                raise errors.UnknownGesture(f"gesture {gesture_id!r} not present")
            if record.version != current.version:
                raise errors.StaleVersion(
                    f"gesture {gesture_id!r} is at version {current.version}, "
                    f"caller has {record.version}"
                )
            for object_id, track in member_tracks.items():
                if object_id not in record.members:
                    raise errors.InvalidInputError(
                        f"member_tracks names {object_id!r}, not a member of this gesture"
                    )
                store.check_track_fits(object_id, track)
            previous = {oid: store.visual_objects[oid] for oid in member_tracks}
            try:
                for object_id, track in member_tracks.items():
                    store.update_visual_object_track(object_id, track)
                updated = store.update_gesture(gesture_id, record, expected_version=record.version)
            except errors.FramecastError:
                store.visual_objects.update(previous)
                raise
            persist()
        return interchange.gesture_to_payload(updated)

    # -- classifier, blending, stats ----------------------------------------------------

    @app.post("/classify")
    async def post_classify(request: Request):
        payload = await read_body(request)
        unknown = set(payload) - {"features", "tau", "delta"}
        if unknown:
            raise errors.ParseError(f"classify body has unknown field(s): {sorted(unknown)}")
        if "features" not in payload:
            raise errors.ParseError("classify body is missing 'features'")
        features = interchange.parse_features(payload["features"])
        tau = interchange.parse_rational(payload.get("tau", str(DEFAULT_TAU)), "tau")
        delta = interchange.parse_rational(payload.get("delta", str(DEFAULT_DELTA)), "delta")
        result = classify_turn_frame(features, prototypes, tau, delta)
        return interchange.result_to_payload(result)

    @app.post("/blend/explain")
    async def post_blend_explain(request: Request):
        payload = await read_body(request)
        unknown = set(payload) - {"frame", "context"}
        if unknown:
            raise errors.ParseError(f"explain body has unknown field(s): {sorted(unknown)}")
        frame = payload.get("frame")
        if not isinstance(frame, str):
            raise errors.ParseError("explain body needs a 'frame' name")
        context = parse_context(payload.get("context", {}))
        chain = explain_gesture(store.ontology, frame, context)
        return interchange.networks_to_document(chain)

    @app.get("/stats")
    def get_stats():
        return summary_to_payload(corpus_summary(store))

    @app.post("/validate")
    def post_validate():
        return report_to_payload(store.validate())

    return app


def serve(
    store_path: Path,
    bind: str = "127.0.0.1:8787",
    prototypes: Optional[Sequence[Prototype]] = None,
) -> None:
    """Load and validate the store file, then serve until interrupted."""
    import uvicorn

    from .seed import load_shipped_prototypes

    store = interchange.import_store(store_path.read_bytes())
    table = list(prototypes) if prototypes is not None else load_shipped_prototypes()
    app = create_app(store, table, store_path=store_path)
    host, _, port = bind.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
