import pytest
from hypothesis import given
from hypothesis import strategies as st

from framecast import errors
from framecast.features import GestureFeatures
from framecast.fixtures import DEMO_SENTENCE_TEXT, PROTOTYPICAL_PASSING, add_demo_sentence
from framecast.ontology import PartOfSpeech
from framecast.store import (
    AnnotationStore,
    BoundingBox,
    BoundingBoxTrack,
    Keyframe,
    Provenance,
    box_at,
)


def track(*keyframes):
    return BoundingBoxTrack(tuple(Keyframe(t, BoundingBox(*box)) for t, box in keyframes))


def store_with_document(seed_store, duration_ms=60_000):
    seed_store.add_document("ep5", "Episode 5", duration_ms, 1280, 720)
    return seed_store


def add_hand_and_head(store, doc="ep5", start=1_000, end=2_500, prefix=""):
    hand = store.add_visual_object(
        f"{prefix}hand",
        doc,
        "Body_parts: mão",
        "Body_parts",
        ("mão", PartOfSpeech.NOUN, "Body_parts"),
        track((start, (0.4, 0.5, 0.1, 0.2)), (end, (0.5, 0.5, 0.1, 0.2))),
    )
    head = store.add_visual_object(
        f"{prefix}head",
        doc,
        "Body_parts: cabeça",
        "Body_parts",
        ("cabeça", PartOfSpeech.NOUN, "Body_parts"),
        track((start + 100, (0.45, 0.1, 0.1, 0.15)), (end - 100, (0.45, 0.1, 0.1, 0.15))),
    )
    return hand, head


class TestAnnotationSets:
    def test_demo_sentence_possession_set(self, seed_store):
        store = store_with_document(seed_store)
        add_demo_sentence(store, "ep5", "s1")
        sets = store.annotation_sets_for_sentence("s1")
        assert len(sets) == 2
        possession = store.annotation_sets_for_frame("Possession")
        assert len(possession) == 1
        aset = possession[0]
        text = store.sentences["s1"].text
        assert text[slice(*aset.target_span)] == "had"
        labelled = {name: text[slice(*span)] for name, span in aset.fe_labels}
        assert labelled == {"Owner": "Scotland", "Possession": "its own culture"}

    def test_empty_fe_labels_allowed(self, seed_store):
        store = store_with_document(seed_store)
        store.add_sentence("s1", "ep5", DEMO_SENTENCE_TEXT)
        aset = store.create_annotation_set(
            "s1", ("always", PartOfSpeech.ADVERB, "Frequency"), (9, 15)
        )
        assert aset.fe_labels == ()
        assert store.annotation_sets_for_frame("Frequency") == [aset]

    def test_span_beyond_text_rejected(self, seed_store):
        store = store_with_document(seed_store)
        store.add_sentence("s1", "ep5", DEMO_SENTENCE_TEXT)
        with pytest.raises(errors.SpanOutOfBounds):
            store.create_annotation_set(
                "s1",
                ("have", PartOfSpeech.VERB, "Possession"),
                (16, 19),
                (("Owner", (0, len(DEMO_SENTENCE_TEXT) + 5)),),
            )

    def test_overlapping_fe_spans_rejected(self, seed_store):
        store = store_with_document(seed_store)
        store.add_sentence("s1", "ep5", DEMO_SENTENCE_TEXT)
        with pytest.raises(errors.OverlappingFeSpans):
            store.create_annotation_set(
                "s1",
                ("have", PartOfSpeech.VERB, "Possession"),
                (16, 19),
                (("Owner", (0, 10)), ("Possession", (8, 20))),
            )

    def test_unknown_fe_rejected(self, seed_store):
        store = store_with_document(seed_store)
        store.add_sentence("s1", "ep5", DEMO_SENTENCE_TEXT)
        with pytest.raises(errors.UnknownFrameElement):
            store.create_annotation_set(
                "s1",
                ("have", PartOfSpeech.VERB, "Possession"),
                (16, 19),
                (("Buyer", (0, 8)),),
            )

    def test_unknown_lu_rejected(self, seed_store):
        store = store_with_document(seed_store)
        store.add_sentence("s1", "ep5", DEMO_SENTENCE_TEXT)
        with pytest.raises(errors.UnknownLexicalUnit):
            store.create_annotation_set(
                "s1", ("nonexistent", PartOfSpeech.VERB, "Possession"), (16, 19)
            )

    def test_unicode_spans_count_scalar_values(self, seed_store):
        store = store_with_document(seed_store)
        text = "mão é corpo"
        store.add_sentence("s_pt", "ep5", text)
        aset = store.create_annotation_set(
            "s_pt", ("mão", PartOfSpeech.NOUN, "Body_parts"), (0, 3),
            (("Body_part", (0, 3)),),
        )
        assert text[slice(*aset.target_span)] == "mão"


class TestBoxAt:
    def test_linear_midpoint(self):
        t = track((0, (0.1, 0.2, 0.3, 0.4)), (1000, (0.3, 0.2, 0.3, 0.4)))
        assert box_at(t, 500) == BoundingBox(0.2, 0.2, 0.3, 0.4)

    def test_exact_keyframe_verbatim(self):
        first = BoundingBox(0.1, 0.2, 0.3, 0.4)
        t = track((0, (0.1, 0.2, 0.3, 0.4)), (1000, (0.5, 0.5, 0.2, 0.2)))
        assert box_at(t, 0) is t.keyframes[0].box
        assert box_at(t, 1000) is t.keyframes[1].box
        assert box_at(t, 0) == first

    def test_before_first_keyframe_rejected(self):
        t = track((100, (0.1, 0.2, 0.3, 0.4)), (1000, (0.3, 0.2, 0.3, 0.4)))
        with pytest.raises(errors.TimeOutsideTrack):
            box_at(t, 50)
        with pytest.raises(errors.TimeOutsideTrack):
            box_at(t, 1001)

    @given(st.integers(min_value=0, max_value=1000))
    def test_interpolation_matches_direct_formula(self, t_ms):
        # Oracle: the lerp expression written out independently.
        t = track((0, (0.1, 0.1, 0.2, 0.2)), (400, (0.3, 0.5, 0.25, 0.3)),
                  (1000, (0.6, 0.2, 0.1, 0.4)))
        result = box_at(t, t_ms)
        lo, hi = ((t.keyframes[0], t.keyframes[1]) if t_ms <= 400
                  else (t.keyframes[1], t.keyframes[2]))
        alpha = (t_ms - lo.t_ms) / (hi.t_ms - lo.t_ms)
        for axis in ("x", "y", "w", "h"):
            expected = getattr(lo.box, axis) + alpha * (
                getattr(hi.box, axis) - getattr(lo.box, axis)
            )
            assert getattr(result, axis) == pytest.approx(expected, abs=2e-6)

    @given(st.integers(min_value=1, max_value=999))
    def test_continuity_between_adjacent_readouts(self, t_ms):
        t = track((0, (0.0, 0.0, 0.5, 0.5)), (1000, (0.5, 0.5, 0.4, 0.4)))
        a, b = box_at(t, t_ms - 1), box_at(t, t_ms)
        for axis in ("x", "y", "w", "h"):
            assert abs(getattr(a, axis) - getattr(b, axis)) < 1e-3


class TestTracksAndObjects:
    def test_box_quantized_to_six_decimals(self):
        box = BoundingBox(0.1234567891, 0.2, 0.3, 0.4)
        assert box.x == 0.123457

    def test_nonmonotonic_keyframes_rejected(self, seed_store):
        store = store_with_document(seed_store)
        bad = track((1000, (0.1, 0.1, 0.1, 0.1)), (500, (0.1, 0.1, 0.1, 0.1)))
        with pytest.raises(errors.BadKeyframeOrder):
            store.add_visual_object(
                "vo1", "ep5", "x", "Body_parts", ("mão", PartOfSpeech.NOUN, "Body_parts"), bad
            )

    def test_box_outside_unit_square_rejected(self, seed_store):
        store = store_with_document(seed_store)
        bad = track((0, (0.95, 0.1, 0.2, 0.1)))
        with pytest.raises(errors.BadBoxGeometry):
            store.add_visual_object(
                "vo1", "ep5", "x", "Body_parts", ("mão", PartOfSpeech.NOUN, "Body_parts"), bad
            )

    def test_track_beyond_document_duration_rejected(self, seed_store):
        store = store_with_document(seed_store, duration_ms=1_000)
        long_track = track((0, (0.1, 0.1, 0.1, 0.1)), (5_000, (0.2, 0.1, 0.1, 0.1)))
        with pytest.raises(errors.SpanOutOfBounds):
            store.add_visual_object(
                "vo1", "ep5", "x", "Body_parts", ("mão", PartOfSpeech.NOUN, "Body_parts"),
                long_track,
            )

    def test_category_lu_must_evoke_category_frame(self, seed_store):
        store = store_with_document(seed_store)
        with pytest.raises(errors.InvalidInputError):
            store.add_visual_object(
                "vo1", "ep5", "x", "Possession", ("mão", PartOfSpeech.NOUN, "Body_parts"),
                track((0, (0.1, 0.1, 0.1, 0.1)), (100, (0.1, 0.1, 0.1, 0.1))),
            )


class TestGestures:
    def test_two_member_gesture(self, seed_store):
        store = store_with_document(seed_store)
        hand, head = add_hand_and_head(store)
        gesture = store.create_gesture(
            "ep5",
            (hand, head),
            PROTOTYPICAL_PASSING,
            fe_assignment=(("Utterer", "Pedro"),),
            evoked_frame="Turn_passing",
        )
        assert gesture.provenance is Provenance.MANUAL
        assert gesture.version == 1
        assert store.gesture_extent(gesture) == (1_000, 2_500)

    def test_cross_document_members_rejected(self, seed_store):
        store = store_with_document(seed_store)
        store.add_document("ep6", "Episode 6", 60_000, 1280, 720)
        hand, _ = add_hand_and_head(store, "ep5")
        other_hand, _ = add_hand_and_head(store, "ep6", prefix="ep6_")
        with pytest.raises(errors.CrossDocumentMembers):
            store.create_gesture("ep5", (hand, other_hand), PROTOTYPICAL_PASSING)

    def test_semantic_frame_rejected(self, seed_store):
        store = store_with_document(seed_store)
        hand, head = add_hand_and_head(store)
        with pytest.raises(errors.NonPragmaticFrame):
            store.create_gesture(
                "ep5", (hand, head), PROTOTYPICAL_PASSING, evoked_frame="Possession"
            )

    def test_empty_members_rejected(self, seed_store):
        store = store_with_document(seed_store)
        with pytest.raises(errors.EmptyMembers):
            store.create_gesture("ep5", (), PROTOTYPICAL_PASSING)

    def test_unknown_fe_in_assignment_rejected(self, seed_store):
        store = store_with_document(seed_store)
        hand, head = add_hand_and_head(store)
        with pytest.raises(errors.UnknownFrameElement):
            store.create_gesture(
                "ep5",
                (hand, head),
                PROTOTYPICAL_PASSING,
                fe_assignment=(("Owner", "Pedro"),),
                evoked_frame="Turn_passing",
            )

    def test_extent_spans_min_start_to_max_end(self, seed_store):
        store = store_with_document(seed_store)
        hand, _ = add_hand_and_head(store, start=2_000, end=3_000)
        solo = store.add_visual_object(
            "solo",
            "ep5",
            "Body_parts: mão",
            "Body_parts",
            ("mão", PartOfSpeech.NOUN, "Body_parts"),
            track((500, (0.1, 0.1, 0.1, 0.1)), (1_200, (0.2, 0.1, 0.1, 0.1))),
        )
        gesture = store.create_gesture("ep5", (hand, solo), PROTOTYPICAL_PASSING)
        assert store.gesture_extent(gesture) == (500, 3_000)

    def test_update_requires_current_version(self, seed_store):
        from dataclasses import replace

        store = store_with_document(seed_store)
        hand, head = add_hand_and_head(store)
        gesture = store.create_gesture("ep5", (hand, head), PROTOTYPICAL_PASSING)
        updated = store.update_gesture(
            gesture.id, replace(gesture, evoked_frame="Turn_passing"), expected_version=1
        )
        assert updated.version == 2
        with pytest.raises(errors.StaleVersion):
            store.update_gesture(gesture.id, updated, expected_version=1)
        assert store.gestures[gesture.id].version == 2

    def test_features_paraphrase_consistency(self):
        with pytest.raises(errors.InvalidInputError):
            GestureFeatures(topic_illustrative=False, paraphrase_topic_independent=True)


def test_validate_accepts_reference_store(reference_store):
    assert reference_store.validate().ok


def test_validate_flags_planted_problems(seed_store):
    store = store_with_document(seed_store)
    hand, head = add_hand_and_head(store)
    store.create_gesture("ep5", (hand, head), PROTOTYPICAL_PASSING)
    # Delete a member out from under the gesture and orphan a frame reference.
    del store.visual_objects["head"]
    del store.ontology.frames["Body_parts"]
    rules = {f.rule_id for f in store.validate().findings}
    assert "dangling_reference" in rules
