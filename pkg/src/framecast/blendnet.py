"""Symbolic mental spaces, cross-space mappings and integration networks.

Networks are inert value objects: construction validates structural
invariants (injective mappings, no orphan blend elements) and nothing is
inferred over them afterwards. ``explain_gesture`` composes the three-stage
chain that takes a turn-organization verdict from deictic grounding through
the social setting to the turn-as-manipulable-object blend.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from . import errors
from .ontology import Frame, Ontology


class SpaceKind(str, Enum):
    GROUND_BASE = "ground_base"
    EPISTEMIC = "epistemic"
    SPEECH_ACT = "speech_act"
    METALINGUISTIC = "metalinguistic"
    CONTENT_BASE = "content_base"
    INPUT = "input"
    GENERIC = "generic"
    BLEND = "blend"
    OTHER = "other"


@dataclass(frozen=True)
class SpaceElement:
    id: str
    label: str
    role: Optional[str] = None


@dataclass(frozen=True)
class MentalSpace:
    id: str
    label: str
    kind: SpaceKind
    elements: tuple[SpaceElement, ...] = ()
    structuring_frame: Optional[Frame] = None

    def __post_init__(self):
        ids = [e.id for e in self.elements]
        if len(ids) != len(set(ids)):
            raise errors.InvalidInputError(f"space {self.id!r} repeats element ids")
        if self.structuring_frame is not None:
            for element in self.elements:
                if element.role is not None and self.structuring_frame.fe(element.role) is None:
                    raise errors.UnknownFrameElement(
                        f"element {element.id!r} plays role {element.role!r}, which is not an FE "
                        f"of {self.structuring_frame.name!r}"
                    )

    def element(self, element_id: str) -> Optional[SpaceElement]:
        for element in self.elements:
            if element.id == element_id:
                return element
        return None

    @property
    def element_ids(self) -> set[str]:
        return {e.id for e in self.elements}


@dataclass(frozen=True)
class CrossSpaceMapping:
    """Partial injection between the elements of two spaces."""

    space_a: MentalSpace
    space_b: MentalSpace
    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        seen_a: set[str] = set()
        seen_b: set[str] = set()
        for ea, eb in self.pairs:
            if self.space_a.element(ea) is None:
                raise errors.UnknownSpaceElement(
                    f"mapping names {ea!r}, not an element of space {self.space_a.id!r}"
                )
            if self.space_b.element(eb) is None:
                raise errors.UnknownSpaceElement(
                    f"mapping names {eb!r}, not an element of space {self.space_b.id!r}"
                )
            if ea in seen_a or eb in seen_b:
                raise errors.DuplicateBinding(
                    f"mapping pairs ({ea!r}, {eb!r}) map an element twice"
                )
            seen_a.add(ea)
            seen_b.add(eb)


@dataclass(frozen=True)
class Projection:
    """One ancestry edge: an input element projected into a blend element."""

    source_space: str
    source_element: str
    blend_element: str


@dataclass(frozen=True)
class IntegrationNetwork:
    inputs: tuple[MentalSpace, ...]
    blend: MentalSpace
    mappings: tuple[CrossSpaceMapping, ...] = ()
    projections: tuple[Projection, ...] = ()
    generic: Optional[MentalSpace] = None

    def __post_init__(self):
        if len(self.inputs) < 2:
            raise errors.TooFewInputs("an integration network needs at least two input spaces")
        inputs_by_id = {space.id: space for space in self.inputs}
        for mapping in self.mappings:
            for space in (mapping.space_a, mapping.space_b):
                if space.id not in inputs_by_id:
                    raise errors.InvalidInputError(
                        f"mapping references space {space.id!r}, not an input of this network"
                    )
        covered: set[str] = set()
        for proj in self.projections:
            source = inputs_by_id.get(proj.source_space)
            if source is None or source.element(proj.source_element) is None:
                raise errors.UnknownSpaceElement(
                    f"projection source {proj.source_space!r}/{proj.source_element!r} "
                    "is not an input element"
                )
            if self.blend.element(proj.blend_element) is None:
                raise errors.UnknownSpaceElement(
                    f"projection target {proj.blend_element!r} is not a blend element"
                )
            covered.add(proj.blend_element)
        orphans = self.blend.element_ids - covered
        if orphans:
            raise errors.OrphanBlendElement(
                f"blend element(s) without projection ancestry: {sorted(orphans)}"
            )

    def ancestors_of(self, blend_element: str) -> list[tuple[str, str]]:
        return [
            (p.source_space, p.source_element)
            for p in self.projections
            if p.blend_element == blend_element
        ]


def _slug(label: str) -> str:
    slug = re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_").lower()
    return slug or "element"


def frame_to_values(
    frame: Frame,
    value_elements: Sequence[str],
    bindings: Union[Mapping[str, str], Iterable[tuple[str, str]]],
) -> CrossSpaceMapping:
    """Connect a frame-structured role space to a space of concrete values.

    ``bindings`` pairs value labels with FE names (value -> role); both sides
    must be distinct across pairs.
    """
    pairs = list(bindings.items()) if isinstance(bindings, Mapping) else list(bindings)

    role_elements = tuple(
        SpaceElement(fe.name, fe.name, role=fe.name) for fe in frame.frame_elements
    )
    role_space = MentalSpace(
        f"{frame.name.lower()}_roles",
        f"{frame.name} roles",
        SpaceKind.INPUT,
        role_elements,
        structuring_frame=frame,
    )
    value_ids: dict[str, str] = {}
    elements = []
    for label in value_elements:
        base = _slug(label)
        element_id, n = base, 2
        while any(e.id == element_id for e in elements):
            element_id, n = f"{base}_{n}", n + 1
        value_ids[label] = element_id
        elements.append(SpaceElement(element_id, label))
    value_space = MentalSpace("values", "values", SpaceKind.INPUT, tuple(elements))

    mapping_pairs = []
    used_fes: set[str] = set()
    used_values: set[str] = set()
    for value_label, fe_name in pairs:
        if frame.fe(fe_name) is None:
            raise errors.UnknownFrameElement(
                f"binding names {fe_name!r}, not an FE of {frame.name!r}"
            )
        if value_label not in value_ids:
            raise errors.UnknownSpaceElement(
                f"binding names value {value_label!r}, not among the value elements"
            )
        if fe_name in used_fes or value_label in used_values:
            raise errors.DuplicateBinding(
                f"binding ({value_label!r} -> {fe_name!r}) reuses an already-bound side"
            )
        used_fes.add(fe_name)
        used_values.add(value_label)
        mapping_pairs.append((fe_name, value_ids[value_label]))
    return CrossSpaceMapping(role_space, value_space, tuple(mapping_pairs))


@dataclass(frozen=True)
class CommunicativeContext:
    """Who is talking to whom, when, where, and in what kind of interaction."""

    utterer: str
    comprehender: str
    time: str = "now"
    place: str = "here"
    interaction_kind: str = "conversation"
    include_content: bool = False


@dataclass(frozen=True)
class Bcsn:
    """The always-available network of communicative spaces."""

    ground_base: MentalSpace
    epistemic: MentalSpace
    speech_act: MentalSpace
    metalinguistic: MentalSpace
    content_base: Optional[MentalSpace] = None

    @property
    def spaces(self) -> list[MentalSpace]:
        out = [self.ground_base, self.epistemic, self.speech_act, self.metalinguistic]
        if self.content_base is not None:
            out.append(self.content_base)
        return out


def build_bcsn(context: CommunicativeContext) -> Bcsn:
    """Ground base (utterer, comprehender, time, place) plus the epistemic,
    speech-act and metalinguistic spaces; a content space only on request."""
    if context.utterer == context.comprehender:
        raise errors.DegenerateGround("utterer and comprehender labels must differ")
    ground = MentalSpace(
        "ground_base",
        "ground base",
        SpaceKind.GROUND_BASE,
        (
            SpaceElement("utterer", context.utterer),
            SpaceElement("comprehender", context.comprehender),
            SpaceElement("time", context.time),
            SpaceElement("place", context.place),
        ),
    )
    epistemic = MentalSpace("epistemic", "epistemic", SpaceKind.EPISTEMIC)
    speech_act = MentalSpace(
        "speech_act",
        context.interaction_kind,
        SpaceKind.SPEECH_ACT,
        (SpaceElement("interaction", context.interaction_kind),),
    )
    metalinguistic = MentalSpace("metalinguistic", "metalinguistic", SpaceKind.METALINGUISTIC)
    content = (
        MentalSpace("content_base", "communicated content", SpaceKind.CONTENT_BASE)
        if context.include_content
        else None
    )
    return Bcsn(ground, epistemic, speech_act, metalinguistic, content)


BlendElementSpec = tuple[SpaceElement, Sequence[tuple[str, str]]]
ProjectionSelector = Callable[[Sequence[MentalSpace]], Iterable[BlendElementSpec]]


def blend(
    input_spaces: Sequence[MentalSpace],
    mappings: Sequence[CrossSpaceMapping],
    projection_selector: ProjectionSelector,
    blend_id: str = "blend",
    blend_label: str = "blend",
    structuring_frame: Optional[Frame] = None,
) -> IntegrationNetwork:
    """Integrate input spaces into a new blend space.

    The selector decides, element by element, what enters the blend and which
    input elements it projects from; an element with no ancestry is rejected.
    """
    if len(input_spaces) < 2:
        raise errors.TooFewInputs("blending needs at least two input spaces")
    elements = []
    projections = []
    for element, ancestors in projection_selector(tuple(input_spaces)):
        ancestors = list(ancestors)
        if not ancestors:
            raise errors.OrphanBlendElement(
                f"selector produced element {element.id!r} with no input ancestor"
            )
        elements.append(element)
        for space_id, element_id in ancestors:
            projections.append(Projection(space_id, element_id, element.id))
    blend_space = MentalSpace(
        blend_id, blend_label, SpaceKind.BLEND, tuple(elements), structuring_frame
    )
    return IntegrationNetwork(
        tuple(input_spaces), blend_space, tuple(mappings), tuple(projections)
    )


# Gesture form each turn frame maps onto in the object-manipulation input.
_MANIPULATION_ACTION = {
    "Turn_passing": "passing a physical object to the comprehender",
    "Turn_taking": "reaching for an object",
    "Turn_keeping": "holding an object back",
    "Turn_confirmation": "leaving the object with its holder",
    "Assistance_request": "asking for an object to be handed over",
}

TURN_ROOT = "Organization_of_conversation"
DEIXIS_FRAME = "Deixis"


def explain_gesture(
    ontology: Ontology,
    verdict_frame: Union[Frame, str],
    context: CommunicativeContext,
    turn_root: str = TURN_ROOT,
) -> list[IntegrationNetwork]:
    """Three-stage blending chain for a gesture-evoked turn frame.

    Stage 1 grounds deictic roles in the real communicators; stage 2 blends
    that ground with the speech-act setting into communicators-as-social-
    beings; stage 3 blends the social context with object manipulation into
    the turn-as-object space structured by the verdict frame.
    """
    frame = ontology.frame(verdict_frame if isinstance(verdict_frame, str) else verdict_frame.name)
    family = (
        {f.name for f in ontology.turn_family(turn_root)}
        if turn_root in ontology.frames
        else set()
    )
    if frame.name not in family and frame.name != "Assistance_request":
        raise errors.FrameOutsideTurnFamily(
            f"{frame.name!r} is not a turn-organization frame under {turn_root!r}"
        )

    deixis_frame = ontology.frames.get(DEIXIS_FRAME)
    deictic = ("utterer", "comprehender", "time", "place")

    def deixis_role(name: str) -> Optional[str]:
        if deixis_frame is None:
            return None
        fe_name = name.capitalize()
        return fe_name if deixis_frame.fe(fe_name) else None

    deixis_space = MentalSpace(
        "deixis_roles",
        "deictic roles",
        SpaceKind.INPUT,
        tuple(SpaceElement(n, n, role=deixis_role(n)) for n in deictic),
        structuring_frame=deixis_frame,
    )
    labels = {
        "utterer": context.utterer,
        "comprehender": context.comprehender,
        "time": context.time,
        "place": context.place,
    }
    people_space = MentalSpace(
        "communicative_situation",
        "the real communicative situation",
        SpaceKind.INPUT,
        tuple(SpaceElement(n, labels[n]) for n in deictic),
    )
    stage1_mapping = CrossSpaceMapping(
        deixis_space, people_space, tuple((n, n) for n in deictic)
    )

    def stage1_selector(_inputs):
        for name in deictic:
            element = SpaceElement(name, labels[name], role=deixis_role(name))
            yield element, [("deixis_roles", name), ("communicative_situation", name)]

    stage1 = blend(
        (deixis_space, people_space),
        (stage1_mapping,),
        stage1_selector,
        blend_id="ground_base_blend",
        blend_label="ground base",
        structuring_frame=deixis_frame,
    )

    speech_act = MentalSpace(
        "speech_act",
        context.interaction_kind,
        SpaceKind.SPEECH_ACT,
        (SpaceElement("interaction", context.interaction_kind),),
    )

    def stage2_selector(_inputs):
        yield (
            SpaceElement("utterer", f"{context.utterer} as social being"),
            [(stage1.blend.id, "utterer"), ("speech_act", "interaction")],
        )
        yield (
            SpaceElement("comprehender", f"{context.comprehender} as social being"),
            [(stage1.blend.id, "comprehender"), ("speech_act", "interaction")],
        )
        yield (
            SpaceElement("speech_turn", "the turn at talk"),
            [("speech_act", "interaction")],
        )

    stage2 = blend(
        (stage1.blend, speech_act),
        (),
        stage2_selector,
        blend_id="social_context_blend",
        blend_label="communicators as social beings",
    )

    manipulation_space = MentalSpace(
        "object_manipulation",
        "people manipulating objects",
        SpaceKind.INPUT,
        (
            SpaceElement("handler", "a person handling objects"),
            SpaceElement("object", "a manipulable object"),
            SpaceElement(
                "action", _MANIPULATION_ACTION.get(frame.name, "manipulating an object")
            ),
        ),
    )

    def role_if_present(name: str) -> Optional[str]:
        return name if frame.fe(name) is not None else None

    def stage3_selector(_inputs):
        yield (
            SpaceElement("utterer", f"{context.utterer} as object handler", role_if_present("Utterer")),
            [(stage2.blend.id, "utterer"), ("object_manipulation", "handler")],
        )
        yield (
            SpaceElement(
                "comprehender",
                f"{context.comprehender} as object handler",
                role_if_present("Comprehender"),
            ),
            [(stage2.blend.id, "comprehender"), ("object_manipulation", "handler")],
        )
        yield (
            SpaceElement("turn_object", "the speech turn as a passable object"),
            [(stage2.blend.id, "speech_turn"), ("object_manipulation", "object")],
        )
        yield (
            SpaceElement(
                "gesture_action", _MANIPULATION_ACTION.get(frame.name, "manipulating an object")
            ),
            [("object_manipulation", "action")],
        )

    stage3 = blend(
        (stage2.blend, manipulation_space),
        (),
        stage3_selector,
        blend_id="turn_as_object_blend",
        blend_label="speech turn as object",
        structuring_frame=frame,
    )
    return [stage1, stage2, stage3]
