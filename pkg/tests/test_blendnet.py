import pytest
from hypothesis import given
from hypothesis import strategies as st

from framecast import errors
from framecast.blendnet import (
    CommunicativeContext,
    CrossSpaceMapping,
    MentalSpace,
    SpaceElement,
    SpaceKind,
    blend,
    build_bcsn,
    explain_gesture,
    frame_to_values,
)

INTERVIEW = CommunicativeContext(
    "Pedro", "interviewee", time="now", place="street", interaction_kind="interview"
)


def space(space_id, *element_ids, kind=SpaceKind.INPUT):
    return MentalSpace(
        space_id, space_id, kind, tuple(SpaceElement(e, e) for e in element_ids)
    )


class TestFrameToValues:
    def test_commercial_event_three_pairs(self, seed_ontology):
        mapping = frame_to_values(
            seed_ontology.frame("Commercial_event"),
            ["I", "a friend", "a car"],
            {"I": "Buyer", "a friend": "Seller", "a car": "Goods"},
        )
        assert set(mapping.pairs) == {
            ("Buyer", "i"),
            ("Seller", "a_friend"),
            ("Goods", "a_car"),
        }
        assert mapping.space_a.structuring_frame.name == "Commercial_event"
        assert {e.role for e in mapping.space_a.elements} >= {"Buyer", "Seller", "Goods"}

    def test_empty_bindings_give_empty_mapping(self, seed_ontology):
        mapping = frame_to_values(seed_ontology.frame("Commercial_event"), ["I"], {})
        assert mapping.pairs == ()

    def test_duplicate_fe_binding_rejected(self, seed_ontology):
        with pytest.raises(errors.DuplicateBinding):
            frame_to_values(
                seed_ontology.frame("Commercial_event"),
                ["I", "you"],
                [("I", "Buyer"), ("you", "Buyer")],
            )

    def test_unknown_fe_rejected(self, seed_ontology):
        with pytest.raises(errors.UnknownFrameElement):
            frame_to_values(seed_ontology.frame("Commercial_event"), ["I"], {"I": "Owner"})

    def test_unknown_value_rejected(self, seed_ontology):
        with pytest.raises(errors.UnknownSpaceElement):
            frame_to_values(seed_ontology.frame("Commercial_event"), ["I"], {"them": "Buyer"})


class TestMappingInvariants:
    def test_element_must_exist(self):
        with pytest.raises(errors.UnknownSpaceElement):
            CrossSpaceMapping(space("a", "x"), space("b", "y"), (("x", "z"),))

    def test_injectivity_enforced_both_ways(self):
        with pytest.raises(errors.DuplicateBinding):
            CrossSpaceMapping(space("a", "x"), space("b", "y", "z"), (("x", "y"), ("x", "z")))
        with pytest.raises(errors.DuplicateBinding):
            CrossSpaceMapping(space("a", "x", "w"), space("b", "y"), (("x", "y"), ("w", "y")))

    @given(
        st.lists(
            st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=0, max_size=12
        )
    )
    def test_random_pair_lists(self, raw_pairs):
        a = space("a", *(f"a{i}" for i in range(6)))
        b = space("b", *(f"b{i}" for i in range(6)))
        pairs = tuple((f"a{i}", f"b{j}") for i, j in raw_pairs)
        lefts = [p[0] for p in pairs]
        rights = [p[1] for p in pairs]
        injective = len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)
        if injective:
            mapping = CrossSpaceMapping(a, b, pairs)
            assert len(set(mapping.pairs)) == len(mapping.pairs)
        else:
            with pytest.raises(errors.DuplicateBinding):
                CrossSpaceMapping(a, b, pairs)


class TestBuildBcsn:
    def test_interview_network_without_content(self):
        bcsn = build_bcsn(INTERVIEW)
        kinds = [s.kind for s in bcsn.spaces]
        assert kinds == [
            SpaceKind.GROUND_BASE,
            SpaceKind.EPISTEMIC,
            SpaceKind.SPEECH_ACT,
            SpaceKind.METALINGUISTIC,
        ]
        assert len(bcsn.ground_base.elements) == 4
        assert {e.id for e in bcsn.ground_base.elements} == {
            "utterer",
            "comprehender",
            "time",
            "place",
        }
        assert bcsn.speech_act.label == "interview"
        assert bcsn.content_base is None

    def test_wish_pattern_adds_content_space(self):
        bcsn = build_bcsn(
            CommunicativeContext("A", "B", interaction_kind="farewell", include_content=True)
        )
        assert bcsn.content_base is not None
        assert bcsn.content_base.kind is SpaceKind.CONTENT_BASE
        assert len(bcsn.spaces) == 5

    def test_plain_farewell_carries_no_content_space(self):
        bcsn = build_bcsn(CommunicativeContext("A", "B", interaction_kind="farewell"))
        assert bcsn.content_base is None
        assert len(bcsn.spaces) == 4

    def test_degenerate_ground_rejected(self):
        with pytest.raises(errors.DegenerateGround):
            build_bcsn(CommunicativeContext("Pedro", "Pedro"))

    @given(st.text(min_size=1, max_size=8), st.text(min_size=1, max_size=8))
    def test_ground_base_always_has_exactly_four_elements(self, utterer, comprehender):
        if utterer == comprehender:
            with pytest.raises(errors.DegenerateGround):
                build_bcsn(CommunicativeContext(utterer, comprehender))
            return
        bcsn = build_bcsn(CommunicativeContext(utterer, comprehender))
        ground_spaces = [s for s in bcsn.spaces if s.kind is SpaceKind.GROUND_BASE]
        assert len(ground_spaces) == 1
        assert len(ground_spaces[0].elements) == 4


class TestBlend:
    def test_two_input_blend(self):
        a, b = space("a", "x"), space("b", "y")

        def selector(_inputs):
            yield SpaceElement("xy", "x and y"), [("a", "x"), ("b", "y")]

        network = blend((a, b), (), selector)
        assert network.blend.kind is SpaceKind.BLEND
        assert network.ancestors_of("xy") == [("a", "x"), ("b", "y")]

    def test_orphan_element_rejected(self):
        a, b = space("a", "x"), space("b", "y")

        def selector(_inputs):
            yield SpaceElement("floating", "no ancestry"), []

        with pytest.raises(errors.OrphanBlendElement):
            blend((a, b), (), selector)

    def test_too_few_inputs_rejected(self):
        with pytest.raises(errors.TooFewInputs):
            blend((space("a", "x"),), (), lambda inputs: [])

    def test_projection_source_must_exist(self):
        a, b = space("a", "x"), space("b", "y")

        def selector(_inputs):
            yield SpaceElement("e", "e"), [("a", "missing")]

        with pytest.raises(errors.UnknownSpaceElement):
            blend((a, b), (), selector)


def walk_to_input_spaces(chain, network, element_id, path=()):
    """Oracle: depth-first ancestry across the whole chain; returns the set of
    terminal (non-blend) space ids reached, failing on cycles or dead ends."""
    assert (network.blend.id, element_id) not in path, "ancestry cycle"
    path = path + ((network.blend.id, element_id),)
    ancestors = network.ancestors_of(element_id)
    assert ancestors, f"{element_id} has no ancestors in {network.blend.id}"
    terminals = set()
    blends_by_id = {net.blend.id: net for net in chain}
    for space_id, ancestor_element in ancestors:
        if space_id in blends_by_id:
            terminals |= walk_to_input_spaces(
                chain, blends_by_id[space_id], ancestor_element, path
            )
        else:
            source = next(s for net in chain for s in net.inputs if s.id == space_id)
            assert source.element(ancestor_element) is not None
            terminals.add(space_id)
    return terminals


class TestExplainGesture:
    def test_three_stage_chain_for_turn_passing(self, seed_ontology):
        chain = explain_gesture(seed_ontology, "Turn_passing", INTERVIEW)
        assert len(chain) == 3
        assert chain[2].blend.structuring_frame.name == "Turn_passing"
        for earlier, later in zip(chain, chain[1:]):
            assert earlier.blend in later.inputs

    def test_full_projection_ancestry(self, seed_ontology):
        chain = explain_gesture(seed_ontology, "Turn_passing", INTERVIEW)
        for element in chain[-1].blend.elements:
            terminals = walk_to_input_spaces(chain, chain[-1], element.id)
            assert terminals <= {
                "deixis_roles",
                "communicative_situation",
                "speech_act",
                "object_manipulation",
            }

    def test_turn_taking_blend_contains_reaching_element(self, seed_ontology):
        chain = explain_gesture(seed_ontology, "Turn_taking", INTERVIEW)
        labels = {e.label for e in chain[-1].blend.elements}
        assert "reaching for an object" in labels

    def test_each_turn_frame_gets_its_own_action(self, seed_ontology):
        actions = {}
        for name in ("Turn_passing", "Turn_keeping", "Turn_confirmation", "Assistance_request"):
            chain = explain_gesture(seed_ontology, name, INTERVIEW)
            action = chain[-1].blend.element("gesture_action")
            actions[name] = action.label
        assert len(set(actions.values())) == len(actions)

    def test_semantic_frame_rejected(self, seed_ontology):
        with pytest.raises(errors.FrameOutsideTurnFamily):
            explain_gesture(seed_ontology, "Possession", INTERVIEW)

    def test_pragmatic_frame_outside_family_rejected(self, seed_ontology):
        with pytest.raises(errors.FrameOutsideTurnFamily):
            explain_gesture(seed_ontology, "Greetings", INTERVIEW)

    def test_assistance_request_is_special_cased(self, seed_ontology):
        chain = explain_gesture(seed_ontology, "Assistance_request", INTERVIEW)
        assert chain[-1].blend.structuring_frame.name == "Assistance_request"

    def test_context_labels_flow_into_ground_blend(self, seed_ontology):
        chain = explain_gesture(seed_ontology, "Turn_passing", INTERVIEW)
        ground = chain[0].blend
        assert ground.element("utterer").label == "Pedro"
        assert ground.element("place").label == "street"
        roles = {e.id: e.role for e in ground.elements}
        assert roles["utterer"] == "Utterer"
        assert roles["comprehender"] == "Comprehender"
