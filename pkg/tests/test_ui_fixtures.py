"""The committed frontend parity fixtures must match the live classifier and
box readout, so the UI tests exercise real server behavior."""

import json
from pathlib import Path

import pytest

from framecast.classifier import classify_turn_frame
from framecast.fixtures import GOLDEN_GESTURES
from framecast.interchange import features_to_payload, parse_track, result_to_payload
from framecast.seed import load_shipped_prototypes
from framecast.store import box_at

FIXTURE = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures" / "golden.json"


@pytest.fixture(scope="module")
def fixture_payload():
    return json.loads(FIXTURE.read_text(encoding="utf-8"))


def test_golden_entries_match_live_classifier(fixture_payload):
    prototypes = load_shipped_prototypes()
    by_name = {entry["name"]: entry for entry in fixture_payload["golden"]}
    assert set(by_name) == {name for name, _, _ in GOLDEN_GESTURES}
    for name, record, expected in GOLDEN_GESTURES:
        entry = by_name[name]
        assert entry["features"] == features_to_payload(record)
        live = result_to_payload(classify_turn_frame(record, prototypes))
        assert entry["response"] == live
        assert entry["response"]["verdict"] == expected


def test_box_probe_matches_live_readout(fixture_payload):
    probe = fixture_payload["box_probe"]
    track = parse_track(probe["track"])
    for sample in probe["samples"]:
        box = box_at(track, sample["t_ms"])
        assert sample["box"] == {"x": box.x, "y": box.y, "w": box.w, "h": box.h}
