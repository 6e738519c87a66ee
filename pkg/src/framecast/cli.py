"""``framecast`` command line: import/export/validate stores, corpus stats
and reports, gesture classification, and the HTTP service.

Exit codes: 0 success, 1 validation findings, 2 usage or parse errors.

``--store`` accepts a file path or one of the packaged aliases ``seed``
(the shipped ontology) and ``paper-fixture`` (the 48-gesture corpus).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import errors, interchange
from .classifier import DEFAULT_DELTA, DEFAULT_TAU, classify_turn_frame
from .seed import frame_or_fixture_path, load_shipped_prototypes
from .service import serve, summary_to_payload
from .stats import corpus_summary
from .store import AnnotationStore


def _read_store_bytes(spec: str) -> bytes:
    packaged = frame_or_fixture_path(spec)
    if packaged is not None:
        return packaged.read_bytes()
    path = Path(spec)
    if not path.exists():
        raise errors.ParseError(f"store {spec!r} does not exist")
    return path.read_bytes()


def _load_store(spec: str) -> AnnotationStore:
    return interchange.import_store(_read_store_bytes(spec))


def _load_prototypes(spec):
    if spec is None:
        return load_shipped_prototypes()
    path = Path(spec)
    if not path.exists():
        raise errors.ParseError(f"prototype table {spec!r} does not exist")
    return interchange.load_prototypes(path.read_bytes())


def cmd_import(args) -> int:
    source = Path(args.source)
    if not source.exists():
        raise errors.ParseError(f"input {args.source!r} does not exist")
    store = interchange.import_store(source.read_bytes())
    data = interchange.export_store(store)
    Path(args.store).write_bytes(data)
    summary = corpus_summary(store)
    print(
        f"imported {summary.documents} documents, {summary.annotation_sets} annotation sets, "
        f"{summary.visual_objects} visual objects, {summary.gestures} gestures -> {args.store}"
    )
    return 0


def cmd_export(args) -> int:
    data = interchange.export_store(_load_store(args.store))
    if args.out:
        Path(args.out).write_bytes(data)
        print(f"wrote {args.out}")
    else:
        sys.stdout.buffer.write(data)
    return 0


def cmd_validate(args) -> int:
    payload = interchange.payload_from_bytes(_read_store_bytes(args.store))
    store = interchange.store_from_payload(payload)
    report = store.validate()
    print(report)
    return 0 if report.ok else 1


def cmd_stats(args) -> int:
    summary = corpus_summary(_load_store(args.store))
    if args.format == "json-like":
        sys.stdout.buffer.write(interchange.canonical_bytes(summary_to_payload(summary)))
        return 0
    for key in ("documents", "sentences", "annotation_sets", "visual_objects", "gestures"):
        print(f"{key:<24} {getattr(summary, key)}")
    print()
    print("gestures by frame")
    for frame, count in summary.gestures_by_frame.items():
        print(f"{frame:<24} {count}")
    print(f"{'unclassified':<24} {summary.unclassified_gestures}")
    return 0


def cmd_classify(args) -> int:
    path = Path(args.features)
    if not path.exists():
        raise errors.ParseError(f"feature file {args.features!r} does not exist")
    payload = interchange.payload_from_bytes(path.read_bytes())
    if "features" in payload:
        payload = payload["features"]
    features = interchange.parse_features(payload)
    tau = interchange.parse_rational(args.tau, "tau") if args.tau else DEFAULT_TAU
    delta = interchange.parse_rational(args.delta, "delta") if args.delta else DEFAULT_DELTA
    result = classify_turn_frame(features, _load_prototypes(args.prototypes), tau, delta)
    if args.format == "json-like":
        sys.stdout.buffer.write(interchange.canonical_bytes(interchange.result_to_payload(result)))
        return 0
    print(f"{'interactivity':<16} {result.interactivity.value}")
    print(f"{'verdict':<16} {result.verdict if result.verdict else '(none)'}")
    print(f"{'margin':<16} {result.margin}")
    for frame, score in result.ranking:
        print(f"  {frame:<22} {score}")
    return 0


def cmd_serve(args) -> int:
    if frame_or_fixture_path(args.store) is not None:
        raise errors.ParseError(
            f"serve needs a writable store file; export {args.store!r} to a path first"
        )
    path = Path(args.store)
    if not path.exists():
        raise errors.ParseError(f"store {args.store!r} does not exist")
    prototypes = _load_prototypes(args.prototypes)
    serve(path, bind=args.bind, prototypes=prototypes)
    return 0


def cmd_report(args) -> int:
    from .report import write_report

    paths = write_report(_load_store(args.store), Path(args.out_dir), args.format)
    for path in paths:
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framecast",
        description="Multimodal frame-semantic annotation workbench.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("import", help="validate an interchange file and write it canonically")
    p.add_argument("source", help="interchange file to read")
    p.add_argument("--store", required=True, help="destination store file")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("export", help="emit a store in canonical interchange form")
    p.add_argument("--store", required=True)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("validate", help="check every invariant and report findings")
    p.add_argument("--store", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="corpus summary")
    p.add_argument("--store", required=True)
    p.add_argument("--format", choices=("table", "json-like"), default="table")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("classify", help="classify a gesture feature record")
    p.add_argument("--features", required=True, help="JSON feature record file")
    p.add_argument("--prototypes", help="prototype table file (default: shipped table)")
    p.add_argument("--tau", help="score threshold (default 3/5)")
    p.add_argument("--delta", help="margin threshold (default 1/10)")
    p.add_argument("--format", choices=("table", "json-like"), default="table")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("serve", help="run the HTTP service over a store file")
    p.add_argument("--store", required=True)
    p.add_argument("--prototypes", help="prototype table file (default: shipped table)")
    p.add_argument("--bind", default="127.0.0.1:8787", help="host:port to bind")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="write summary tables and figures")
    p.add_argument("--store", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.ValidationFailed as exc:
        print(exc.report, file=sys.stderr)
        return 1
    except errors.ParseError as exc:
        print(f"error [{exc.rule_id}]: {exc.message}", file=sys.stderr)
        return 2
    except errors.FramecastError as exc:
        print(f"error [{exc.rule_id}]: {exc.message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
