import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framecast import errors
from framecast.fixtures import (
    CONFIRMING_THE_FLOOR,
    PROTOTYPICAL_PASSING,
    add_demo_sentence,
    random_store,
)
from framecast.ontology import Ontology, PartOfSpeech
from framecast.seed import build_seed_ontology
from framecast.stats import (
    corpus_summary,
    gestures_aligned_with_sentence,
    gestures_overlapping,
)
from framecast.store import AnnotationStore, BoundingBox, BoundingBoxTrack, Keyframe


def single_track_gesture(store, doc_id, gesture_id, start_ms, end_ms,
                         features=PROTOTYPICAL_PASSING, frame=None):
    obj = store.add_visual_object(
        f"vo_{gesture_id}",
        doc_id,
        "Body_parts: mão",
        "Body_parts",
        ("mão", PartOfSpeech.NOUN, "Body_parts"),
        BoundingBoxTrack(
            (
                Keyframe(start_ms, BoundingBox(0.1, 0.1, 0.2, 0.2)),
                Keyframe(end_ms, BoundingBox(0.2, 0.1, 0.2, 0.2)),
            )
        ),
    )
    return store.create_gesture(
        doc_id, (obj,), features, evoked_frame=frame, gesture_id=gesture_id
    )


class TestCorpusSummary:
    def test_reference_distribution(self, reference_store):
        summary = corpus_summary(reference_store)
        assert summary.gestures == 48
        assert summary.gestures_by_frame == {
            "Turn_passing": 30,
            "Turn_confirmation": 16,
            "Turn_taking": 2,
            "Turn_keeping": 0,
        }
        assert summary.unclassified_gestures == 0
        assert summary.documents == 10

    def test_empty_store_all_zeros(self):
        summary = corpus_summary(AnnotationStore(Ontology()))
        assert (
            summary.documents,
            summary.annotation_sets,
            summary.visual_objects,
            summary.gestures,
        ) == (0, 0, 0, 0)
        assert summary.gestures_by_frame == {}

    def test_hand_counted_fixture(self):
        # Hand count: 3 annotation sets, 2 visual objects, 1 gesture.
        store = AnnotationStore(build_seed_ontology())
        store.add_document("ep1", "Episode 1", 60_000, 1280, 720)
        add_demo_sentence(store, "ep1", "s1")  # 2 sets
        store.create_annotation_set(
            "s1", ("have", PartOfSpeech.VERB, "Possession"), (16, 19), (), set_id="as_extra"
        )
        hand = store.add_visual_object(
            "hand", "ep1", "Body_parts: mão", "Body_parts",
            ("mão", PartOfSpeech.NOUN, "Body_parts"),
            BoundingBoxTrack(
                (Keyframe(0, BoundingBox(0.1, 0.1, 0.2, 0.2)),
                 Keyframe(900, BoundingBox(0.15, 0.1, 0.2, 0.2)))
            ),
        )
        head = store.add_visual_object(
            "head", "ep1", "Body_parts: cabeça", "Body_parts",
            ("cabeça", PartOfSpeech.NOUN, "Body_parts"),
            BoundingBoxTrack(
                (Keyframe(100, BoundingBox(0.4, 0.1, 0.2, 0.2)),
                 Keyframe(800, BoundingBox(0.4, 0.1, 0.2, 0.2)))
            ),
        )
        store.create_gesture("ep1", (hand, head), PROTOTYPICAL_PASSING)
        summary = corpus_summary(store)
        assert (summary.annotation_sets, summary.visual_objects, summary.gestures) == (3, 2, 1)
        assert summary.unclassified_gestures == 1

    def test_totals_invariant(self, reference_store):
        summary = corpus_summary(reference_store)
        assert summary.gestures == (
            sum(summary.gestures_by_frame.values()) + summary.unclassified_gestures
        )

    @given(st.integers(min_value=0, max_value=3_000))
    @settings(max_examples=30, deadline=None)
    def test_totals_invariant_on_random_stores(self, seed):
        summary = corpus_summary(random_store(seed))
        assert summary.gestures == (
            sum(summary.gestures_by_frame.values()) + summary.unclassified_gestures
        )

    def test_summary_invariant_under_record_reordering(self, reference_store):
        reordered = AnnotationStore(reference_store.ontology)
        for collection in ("documents", "sentences", "annotation_sets", "visual_objects",
                           "gestures"):
            source = getattr(reference_store, collection)
            target = getattr(reordered, collection)
            for key in sorted(source, reverse=True):
                target[key] = source[key]
        assert corpus_summary(reordered) == corpus_summary(reference_store)

    def test_adding_one_gesture_increments_one_bucket(self):
        store = AnnotationStore(build_seed_ontology())
        store.add_document("ep1", "Episode 1", 60_000, 1280, 720)
        before = corpus_summary(store)
        single_track_gesture(store, "ep1", "g_new", 100, 900, CONFIRMING_THE_FLOOR,
                             frame="Turn_confirmation")
        after = corpus_summary(store)
        diffs = {
            frame: after.gestures_by_frame.get(frame, 0) - before.gestures_by_frame.get(frame, 0)
            for frame in set(before.gestures_by_frame) | set(after.gestures_by_frame)
        }
        assert sum(diffs.values()) == 1
        assert diffs["Turn_confirmation"] == 1
        assert after.gestures == before.gestures + 1


class TestGesturesOverlapping:
    @pytest.fixture
    def overlap_store(self):
        store = AnnotationStore(build_seed_ontology())
        store.add_document("ep1", "Episode 1", 60_000, 1280, 720)
        single_track_gesture(store, "ep1", "g1", 100, 500)
        return store

    def test_positive_overlap_included(self, overlap_store):
        hits = gestures_overlapping(overlap_store, "ep1", (400, 600))
        assert [g.id for g in hits] == ["g1"]

    def test_touching_endpoints_excluded(self, overlap_store):
        assert gestures_overlapping(overlap_store, "ep1", (500, 600)) == []
        assert gestures_overlapping(overlap_store, "ep1", (0, 100)) == []

    def test_empty_interval_rejected(self, overlap_store):
        with pytest.raises(errors.EmptyInterval):
            gestures_overlapping(overlap_store, "ep1", (500, 500))

    def test_results_ordered_by_start(self):
        store = AnnotationStore(build_seed_ontology())
        store.add_document("ep1", "Episode 1", 60_000, 1280, 720)
        single_track_gesture(store, "ep1", "g_late", 2_000, 3_000)
        single_track_gesture(store, "ep1", "g_early", 500, 2_500)
        hits = gestures_overlapping(store, "ep1", (0, 60_000))
        assert [g.id for g in hits] == ["g_early", "g_late"]

    @given(st.integers(min_value=0, max_value=2_000))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force_scan(self, seed):
        rng = random.Random(seed)
        store = random_store(seed)
        for doc_id in store.documents:
            duration = store.documents[doc_id].media.duration_ms
            start = rng.randint(0, duration - 2)
            end = rng.randint(start + 1, duration)
            expected = sorted(
                (
                    (store.gesture_extent(g)[0], g.id)
                    for g in store.gestures.values()
                    if g.document == doc_id
                    and store.gesture_extent(g)[0] < end
                    and store.gesture_extent(g)[1] > start
                ),
            )
            got = gestures_overlapping(store, doc_id, (start, end))
            assert [(store.gesture_extent(g)[0], g.id) for g in got] == expected


class TestGesturesAlignedWithSentence:
    def test_sentence_spanning_gesture(self):
        store = AnnotationStore(build_seed_ontology())
        store.add_document("ep1", "Episode 1", 60_000, 1280, 720)
        store.add_sentence("s1", "ep1", "hello there", (0, 1_000))
        single_track_gesture(store, "ep1", "g1", 100, 500)
        assert [g.id for g in gestures_aligned_with_sentence(store, "s1")] == ["g1"]

    def test_sentence_without_span_rejected(self):
        store = AnnotationStore(build_seed_ontology())
        store.add_document("ep1", "Episode 1", 60_000, 1280, 720)
        store.add_sentence("s1", "ep1", "no timing")
        with pytest.raises(errors.SentenceHasNoTimeSpan):
            gestures_aligned_with_sentence(store, "s1")

    @given(st.integers(min_value=0, max_value=1_000))
    @settings(max_examples=30, deadline=None)
    def test_union_over_sentences_matches_brute_force_pairing(self, seed):
        store = random_store(seed)
        timed = [s for s in store.sentences.values() if s.time_span_ms is not None]
        union = set()
        for sentence in timed:
            union |= {g.id for g in gestures_aligned_with_sentence(store, sentence)}
        expected = set()
        for sentence in timed:
            start, end = sentence.time_span_ms
            for gesture in store.gestures.values():
                if gesture.document != sentence.document:
                    continue
                g_start, g_end = store.gesture_extent(gesture)
                if g_start < end and g_end > start:
                    expected.add(gesture.id)
        assert union == expected
