"""Regenerate frontend/tests/fixtures/golden.json from the reference
implementation: classifier responses for the golden feature records plus
server-side box readouts for the interpolation parity checks.

Run from the repository root: python3 scripts/gen_frontend_fixtures.py
"""

import json
from pathlib import Path

from framecast.classifier import classify_turn_frame
from framecast.fixtures import GOLDEN_GESTURES
from framecast.interchange import features_to_payload, result_to_payload, track_to_payload
from framecast.seed import load_shipped_prototypes
from framecast.store import BoundingBox, BoundingBoxTrack, Keyframe, box_at


def probe_track() -> BoundingBoxTrack:
    return BoundingBoxTrack(
        (
            Keyframe(0, BoundingBox(0.1, 0.2, 0.25, 0.3)),
            Keyframe(400, BoundingBox(0.32, 0.5, 0.2, 0.22)),
            Keyframe(1000, BoundingBox(0.6, 0.15, 0.1, 0.4)),
        )
    )


def main() -> None:
    prototypes = load_shipped_prototypes()
    golden = []
    for name, record, expected in GOLDEN_GESTURES:
        result = classify_turn_frame(record, prototypes)
        assert result.verdict == expected
        golden.append(
            {
                "name": name,
                "features": features_to_payload(record),
                "response": result_to_payload(result),
            }
        )

    track = probe_track()
    samples = []
    for t in (0, 200, 400, 700, 1000):
        box = box_at(track, t)
        samples.append({"t_ms": t, "box": {"x": box.x, "y": box.y, "w": box.w, "h": box.h}})

    out = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    payload = {
        "golden": golden,
        "box_probe": {"track": track_to_payload(track), "samples": samples},
    }
    target = out / "golden.json"
    target.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
