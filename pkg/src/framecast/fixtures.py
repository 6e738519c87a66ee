"""Fixture corpora: golden gesture feature records, the reference corpus
(48 turn gestures distributed 30/16/2/0 over the turn frames), and a
randomized-store generator used by property suites.

Run ``python -m framecast.fixtures OUT.json`` to materialize the reference
corpus as an interchange file.
"""

from __future__ import annotations

import random
from typing import Optional

from .features import (
    ArmConfiguration,
    ComprehenderPosition,
    GestureFeatures,
    HandShape,
    MotionPattern,
    PalmOrientation,
)
from .ontology import FrameElement, FrameKind, Ontology, PartOfSpeech, RelationKind
from .seed import TURN_FRAMES, TURN_ROOT, build_seed_ontology
from .store import AnnotationStore, BoundingBox, BoundingBoxTrack, Keyframe

_INTERACTIVE = dict(
    topic_illustrative=False,
    paraphrase_topic_independent=True,
    paraphrase_addressed_to_interlocutor=True,
    orientation_toward_comprehender=True,
)

PROTOTYPICAL_PASSING = GestureFeatures(
    paraphrase="over to you",
    palm_orientation=PalmOrientation.UP,
    arm_configuration=ArmConfiguration.EXTENDED_FORWARD,
    motion_pattern=MotionPattern.EXTEND,
    hand_shape=HandShape.FINGERS_FLEXED,
    comprehender_position=ComprehenderPosition.FACING,
    **_INTERACTIVE,
)

LATERAL_PASSING = GestureFeatures(
    paraphrase="your turn",
    palm_orientation=PalmOrientation.UP,
    arm_configuration=ArmConfiguration.EXTENDED_LATERAL,
    motion_pattern=MotionPattern.EXTEND,
    hand_shape=HandShape.FINGERS_FLEXED,
    comprehender_position=ComprehenderPosition.BESIDE,
    **_INTERACTIVE,
)

HOLDING_THE_FLOOR = GestureFeatures(
    paraphrase="wait, let me finish",
    palm_orientation=PalmOrientation.TOWARD_COMPREHENDER,
    arm_configuration=ArmConfiguration.BENT_UPWARD,
    motion_pattern=MotionPattern.STATIC_HOLD,
    hand_shape=HandShape.OPEN_PALM,
    comprehender_position=ComprehenderPosition.FACING,
    **_INTERACTIVE,
)

CLAIMING_THE_FLOOR = GestureFeatures(
    paraphrase="let me take this",
    palm_orientation=PalmOrientation.DOWN,
    arm_configuration=ArmConfiguration.REACHING,
    motion_pattern=MotionPattern.EXTEND,
    hand_shape=HandShape.GRASP,
    comprehender_position=ComprehenderPosition.FACING,
    **_INTERACTIVE,
)

WORD_SEARCH_HELP = GestureFeatures(
    paraphrase="help me find the word",
    palm_orientation=PalmOrientation.UP,
    arm_configuration=ArmConfiguration.EXTENDED_LATERAL,
    motion_pattern=MotionPattern.CIRCULAR,
    hand_shape=HandShape.FINGERS_EXTENDED,
    comprehender_position=ComprehenderPosition.BESIDE,
    **_INTERACTIVE,
)

CONFIRMING_THE_FLOOR = GestureFeatures(
    paraphrase="go on, I'm listening",
    palm_orientation=PalmOrientation.UP,
    arm_configuration=ArmConfiguration.RETRACTED,
    motion_pattern=MotionPattern.NOD,
    hand_shape=HandShape.OPEN_PALM,
    comprehender_position=ComprehenderPosition.FACING,
    **_INTERACTIVE,
)

# The five golden records with their expected verdicts.
GOLDEN_GESTURES = (
    ("prototypical_passing", PROTOTYPICAL_PASSING, "Turn_passing"),
    ("lateral_passing", LATERAL_PASSING, "Turn_passing"),
    ("holding_the_floor", HOLDING_THE_FLOOR, "Turn_keeping"),
    ("claiming_the_floor", CLAIMING_THE_FLOOR, "Turn_taking"),
    ("word_search_help", WORD_SEARCH_HELP, "Assistance_request"),
)

DEMO_SENTENCE_TEXT = "Scotland always had its own culture"

REFERENCE_DISTRIBUTION = {
    "Turn_passing": 30,
    "Turn_confirmation": 16,
    "Turn_taking": 2,
    "Turn_keeping": 0,
}

_FRAME_FEATURES = {
    "Turn_passing": (PROTOTYPICAL_PASSING, LATERAL_PASSING),
    "Turn_confirmation": (CONFIRMING_THE_FLOOR,),
    "Turn_taking": (CLAIMING_THE_FLOOR,),
    "Turn_keeping": (HOLDING_THE_FLOOR,),
}

EPISODE_DURATION_MS = 23 * 60 * 1000


def _two_keyframe_track(start_ms: int, end_ms: int, x: float, y: float) -> BoundingBoxTrack:
    return BoundingBoxTrack(
        (
            Keyframe(start_ms, BoundingBox(x, y, 0.1, 0.15)),
            Keyframe(end_ms, BoundingBox(x + 0.05, y, 0.1, 0.15)),
        )
    )


def _add_gesture_pair(store: AnnotationStore, doc_id: str, index: int, frame: str,
                      features: GestureFeatures) -> None:
    start = 5_000 + index * 20_000
    hand = store.add_visual_object(
        f"vo_{doc_id}_{index}_hand",
        doc_id,
        "Body_parts: mão",
        "Body_parts",
        ("mão", PartOfSpeech.NOUN, "Body_parts"),
        _two_keyframe_track(start, start + 1_500, 0.4, 0.5),
    )
    head = store.add_visual_object(
        f"vo_{doc_id}_{index}_head",
        doc_id,
        "Body_parts: cabeça",
        "Body_parts",
        ("cabeça", PartOfSpeech.NOUN, "Body_parts"),
        _two_keyframe_track(start + 200, start + 1_400, 0.45, 0.1),
    )
    store.create_gesture(
        doc_id,
        (hand, head),
        features,
        fe_assignment=(("Utterer", "Pedro"), ("Comprehender", "interviewee")),
        evoked_frame=frame,
        gesture_id=f"g_{doc_id}_{index:02d}",
    )


def add_demo_sentence(store: AnnotationStore, doc_id: str, sentence_id: str = "s_culture",
                      time_span_ms: Optional[tuple[int, int]] = (10_000, 14_000)) -> None:
    """The two-LU demo sentence with its Frequency and Possession sets."""
    store.add_sentence(sentence_id, doc_id, DEMO_SENTENCE_TEXT, time_span_ms)
    store.create_annotation_set(
        sentence_id,
        ("always", PartOfSpeech.ADVERB, "Frequency"),
        (9, 15),
        (),
        set_id=f"as_{sentence_id}_frequency",
    )
    store.create_annotation_set(
        sentence_id,
        ("have", PartOfSpeech.VERB, "Possession"),
        (16, 19),
        (("Owner", (0, 8)), ("Possession", (20, 35))),
        set_id=f"as_{sentence_id}_possession",
    )


def reference_corpus() -> AnnotationStore:
    """Ten-episode reference corpus: 48 turn gestures split 30/16/2/0, two
    hand+head objects per gesture, plus the demo sentence with its two
    annotation sets."""
    store = AnnotationStore(build_seed_ontology())
    for n in range(1, 11):
        store.add_document(f"ep{n:02d}", f"Episode {n}", EPISODE_DURATION_MS, 1280, 720)
    add_demo_sentence(store, "ep01")

    queue: list[tuple[str, GestureFeatures]] = []
    for frame, count in REFERENCE_DISTRIBUTION.items():
        variants = _FRAME_FEATURES[frame]
        for k in range(count):
            queue.append((frame, variants[k % len(variants)]))
    for i, (frame, features) in enumerate(queue):
        doc_id = f"ep{(i % 10) + 1:02d}"
        _add_gesture_pair(store, doc_id, i // 10, frame, features)
    return store


# -- randomized stores ---------------------------------------------------------


_WORDS = (
    "ela", "sempre", "tinha", "cultura", "própria", "cidade", "viagem",
    "rua", "café", "turn", "culture", "gesture", "hand", "head", "world",
)


def _random_features(rng: random.Random) -> GestureFeatures:
    paraphrase = rng.choice((None, "over to you", "keep going", "help me out"))
    return GestureFeatures(
        topic_illustrative=rng.random() < 0.3,
        paraphrase=paraphrase,
        paraphrase_topic_independent=paraphrase is not None and rng.random() < 0.8,
        paraphrase_addressed_to_interlocutor=paraphrase is not None and rng.random() < 0.8,
        orientation_toward_comprehender=rng.random() < 0.7,
        palm_orientation=rng.choice(tuple(PalmOrientation)),
        arm_configuration=rng.choice(tuple(ArmConfiguration)),
        motion_pattern=rng.choice(tuple(MotionPattern)),
        hand_shape=rng.choice(tuple(HandShape)),
        comprehender_position=rng.choice(tuple(ComprehenderPosition)),
    )


def _random_track(rng: random.Random, duration_ms: int) -> BoundingBoxTrack:
    n = rng.randint(2, 4)
    latest_start = max(0, duration_ms - n * 1_000)
    t = rng.randint(0, latest_start)
    keyframes = []
    for _ in range(n):
        x = round(rng.uniform(0.0, 0.7), 3)
        y = round(rng.uniform(0.0, 0.7), 3)
        w = round(rng.uniform(0.02, 0.999 - x), 3)
        h = round(rng.uniform(0.02, 0.999 - y), 3)
        keyframes.append(Keyframe(t, BoundingBox(x, y, w, h)))
        t += rng.randint(100, 900)
    return BoundingBoxTrack(tuple(keyframes))


def _random_extra_ontology(rng: random.Random, onto: Ontology) -> None:
    extra = rng.randint(0, 4)
    names = [f"Fixture_frame_{i}" for i in range(extra)]
    for i, name in enumerate(names):
        # New FE names per frame so inheritance pulls distinct roles.
        fes = tuple(
            FrameElement(f"Role_{i}_{j}", "fixture role") for j in range(rng.randint(1, 3))
        )
        onto.define_frame(name, "fixture frame", FrameKind.SEMANTIC, fes)
        onto.add_lexical_unit(f"lemma{i}", PartOfSpeech.NOUN, name)
    for i in range(1, extra):
        if rng.random() < 0.6:
            kind = rng.choice((RelationKind.INHERITS_FROM, RelationKind.USES))
            # Edges always point to a lower index, keeping each kind acyclic.
            target = names[rng.randrange(i)]
            onto.add_relation(names[i], kind, target)


def random_store(seed: int) -> AnnotationStore:
    """A randomized valid store; same seed, same store."""
    rng = random.Random(seed)
    onto = build_seed_ontology()
    _random_extra_ontology(rng, onto)
    store = AnnotationStore(onto)

    turn_frames = list(TURN_FRAMES) + ["Assistance_request"]
    for d in range(rng.randint(1, 3)):
        doc_id = f"doc{d}"
        duration = rng.randint(30_000, 120_000)
        store.add_document(doc_id, f"Fixture document {d}", duration, 1280, 720)
        for s in range(rng.randint(0, 3)):
            text = " ".join(rng.choice(_WORDS) for _ in range(rng.randint(3, 8)))
            span = None
            if rng.random() < 0.7:
                a = rng.randint(0, duration - 2)
                span = (a, rng.randint(a + 1, duration))
            store.add_sentence(f"sent_{doc_id}_{s}", doc_id, text, span)
            if rng.random() < 0.5:
                # Target the first word; no FE labels keeps spans trivially valid.
                first = text.split(" ")[0]
                store.create_annotation_set(
                    f"sent_{doc_id}_{s}",
                    ("always", PartOfSpeech.ADVERB, "Frequency"),
                    (0, len(first)),
                    (),
                    set_id=f"as_{doc_id}_{s}",
                )
        object_ids = []
        for v in range(rng.randint(1, 6)):
            obj = store.add_visual_object(
                f"vo_{doc_id}_{v}",
                doc_id,
                "Body_parts: mão",
                "Body_parts",
                ("mão", PartOfSpeech.NOUN, "Body_parts"),
                _random_track(rng, duration),
            )
            object_ids.append(obj.id)
        for g in range(rng.randint(0, 5)):
            members = rng.sample(object_ids, rng.randint(1, min(2, len(object_ids))))
            frame = rng.choice([None] + turn_frames)
            assignment = ()
            if frame is not None and rng.random() < 0.5:
                assignment = (("Utterer", rng.choice(("Pedro", "interviewee"))),)
            store.create_gesture(
                doc_id,
                members,
                _random_features(rng),
                fe_assignment=assignment,
                evoked_frame=frame,
                gesture_id=f"g_{doc_id}_{g}",
            )
    return store


def main(argv=None) -> int:
    import argparse

    from .interchange import export_store

    parser = argparse.ArgumentParser(description="Write the reference fixture corpus.")
    parser.add_argument("out", help="output path for the interchange file")
    args = parser.parse_args(argv)
    with open(args.out, "wb") as fh:
        fh.write(export_store(reference_corpus()))
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
