"""Seed ontology: the pragmatic turn-organization frame family plus the
demo semantic frames used by text annotation and blending examples.

The same content ships as ``data/seed.json`` in the interchange format;
``build_seed_ontology`` is the source of truth and a test pins the two
against each other.
"""

from __future__ import annotations

from importlib import resources

from .ontology import Coreness, Frame, FrameElement, FrameKind, Ontology, PartOfSpeech
from .store import AnnotationStore

TURN_ROOT = "Organization_of_conversation"
TURN_FRAMES = ("Turn_passing", "Turn_taking", "Turn_keeping", "Turn_confirmation")
# Workbench extension for word-search help gestures; not one of the four
# canonical turn frames but housed in the same family.
EXTENSION_FRAMES = ("Assistance_request",)

_CORE = Coreness.CORE
_PERIPHERAL = Coreness.PERIPHERAL


def _turn_fes() -> tuple[FrameElement, ...]:
    return (
        FrameElement("Communicators", "Everyone taking part in the conversation.", _CORE),
        FrameElement("Comprehender", "The participant the current utterance is addressed to.", _CORE),
        FrameElement("Utterer", "The participant currently producing an utterance.", _CORE),
    )


def build_seed_ontology() -> Ontology:
    onto = Ontology()

    onto.define_frame(
        "Communicative_context",
        "The setting of a communicative act: who is exchanging utterances "
        "with whom, when and where, and what kind of exchange it is.",
        FrameKind.PRAGMATIC,
        (
            FrameElement("Communicators", "The people taking part in the exchange.", _CORE),
            FrameElement("Time", "When the exchange happens.", _PERIPHERAL),
            FrameElement("Place", "Where the exchange happens.", _PERIPHERAL),
        ),
    )
    onto.define_frame(
        TURN_ROOT,
        "Participants in a conversation manage who speaks when: speakership "
        "rotates among the Communicators, with one acting as Utterer while "
        "the other(s) act as Comprehender(s).",
        FrameKind.PRAGMATIC,
        _turn_fes(),
    )
    turn_definitions = {
        "Turn_passing": "The current speaker offers the floor to another participant.",
        "Turn_taking": "A participant claims the floor, becoming the next speaker.",
        "Turn_keeping": "The current speaker signals the intent to hold the floor "
        "past a possible completion point.",
        "Turn_confirmation": "A participant signals that the current speaker should "
        "carry on with the floor.",
        "Assistance_request": "A speaker asks another participant for help producing "
        "an utterance (e.g. finding a word) without giving up the floor. "
        "Workbench extension to the four turn frames.",
    }
    for name in TURN_FRAMES + EXTENSION_FRAMES:
        onto.define_frame(name, turn_definitions[name], FrameKind.PRAGMATIC, _turn_fes())
    onto.define_frame(
        "Greetings",
        "Communicators acknowledge each other on meeting, marking the opening "
        "of an exchange. Kept outside the turn-organization family.",
        FrameKind.PRAGMATIC,
        (
            FrameElement("Communicators", "The people greeting each other.", _CORE),
            FrameElement("Time_of_day", "The part of the day the greeting names.", _PERIPHERAL),
        ),
    )
    onto.define_frame(
        "Deixis",
        "Reference anchored in the communicative situation: the one speaking, "
        "the one addressed, and the here and now of the exchange.",
        FrameKind.PRAGMATIC,
        (
            FrameElement("Utterer", "The one speaking.", _CORE),
            FrameElement("Comprehender", "The one addressed.", _CORE),
            FrameElement("Time", "The now of the exchange.", _CORE),
            FrameElement("Place", "The here of the exchange.", _CORE),
        ),
    )

    onto.define_frame(
        "Possession",
        "An Owner has a Possession.",
        FrameKind.SEMANTIC,
        (
            FrameElement("Owner", "The one who possesses.", _CORE),
            FrameElement("Possession", "That which is possessed.", _CORE),
        ),
    )
    onto.define_frame(
        "Frequency",
        "How often an Event takes place over a stretch of time.",
        FrameKind.SEMANTIC,
        (
            FrameElement("Event", "What recurs.", _CORE),
            FrameElement("Interval", "The stretch of time measured over.", _PERIPHERAL),
        ),
    )
    onto.define_frame(
        "Commercial_event",
        "A Seller transfers Goods to a Buyer in exchange for Money.",
        FrameKind.SEMANTIC,
        (
            FrameElement("Buyer", "The one acquiring the goods.", _CORE),
            FrameElement("Seller", "The one giving up the goods.", _CORE),
            FrameElement("Goods", "What changes hands.", _CORE),
            FrameElement("Money", "What is paid.", _PERIPHERAL),
        ),
    )
    onto.define_frame(
        "Body_parts",
        "A part of a living being's body.",
        FrameKind.SEMANTIC,
        (
            FrameElement("Body_part", "The part itself.", _CORE),
            FrameElement("Possessor", "Whose body it belongs to.", _PERIPHERAL),
        ),
    )

    onto.add_lexical_unit("have", PartOfSpeech.VERB, "Possession")
    onto.add_lexical_unit("always", PartOfSpeech.ADVERB, "Frequency")
    onto.add_lexical_unit("buy", PartOfSpeech.VERB, "Commercial_event")
    onto.add_lexical_unit("bom dia", PartOfSpeech.INTERJECTION, "Greetings")
    onto.add_lexical_unit("mão", PartOfSpeech.NOUN, "Body_parts")
    onto.add_lexical_unit("cabeça", PartOfSpeech.NOUN, "Body_parts")

    onto.add_relation(TURN_ROOT, "uses", "Communicative_context")
    onto.add_relation("Greetings", "uses", "Communicative_context")
    shared = tuple((fe.name, fe.name) for fe in _turn_fes())
    for name in TURN_FRAMES:
        onto.add_relation(name, "subframe_of", TURN_ROOT, shared)
    # The help-request frame is linked to turn organization but kept outside
    # the subframe family, which stays exactly the four turn frames.
    onto.add_relation("Assistance_request", "uses", TURN_ROOT)
    return onto


def build_seed_store() -> AnnotationStore:
    return AnnotationStore(build_seed_ontology())


def _data_bytes(filename: str) -> bytes:
    return resources.files("framecast").joinpath("data", filename).read_bytes()


def load_seed_store() -> AnnotationStore:
    """The shipped seed data file, parsed and validated."""
    from .interchange import import_store

    return import_store(_data_bytes("seed.json"))


def load_shipped_prototypes():
    """The shipped prototype table data file."""
    from .interchange import load_prototypes

    return load_prototypes(_data_bytes("prototypes.json"))


def frame_or_fixture_path(name: str):
    """Resolve the CLI aliases ``seed`` and ``paper-fixture`` to packaged data."""
    aliases = {"seed": "seed.json", "paper-fixture": "reference_corpus.json"}
    if name in aliases:
        return resources.files("framecast").joinpath("data", aliases[name])
    return None
