"""framecast: a multimodal frame-semantic annotation workbench.

Frame ontology with typed relations, text and gesture annotation stores with
a canonical interchange format, a prototype-based interactive-gesture
classifier for conversational turn organization, a mental-spaces blending
engine, corpus statistics, and CLI/HTTP front ends.
"""

from . import errors
from .blendnet import (
    Bcsn,
    CommunicativeContext,
    CrossSpaceMapping,
    IntegrationNetwork,
    MentalSpace,
    SpaceElement,
    SpaceKind,
    blend,
    build_bcsn,
    explain_gesture,
    frame_to_values,
)
from .classifier import (
    ClassificationResult,
    Interactivity,
    Prototype,
    classify_interactivity,
    classify_turn_frame,
    default_prototypes,
    score_prototype,
)
from .features import (
    ArmConfiguration,
    ComprehenderPosition,
    GestureFeatures,
    HandShape,
    MotionPattern,
    PalmOrientation,
)
from .interchange import export_store, import_store, load_prototypes
from .ontology import (
    Coreness,
    Frame,
    FrameElement,
    FrameKind,
    FrameRelation,
    LexicalUnit,
    Ontology,
    PartOfSpeech,
    RelationKind,
    ValidationReport,
    validate_ontology,
)
from .seed import build_seed_ontology, build_seed_store, load_seed_store
from .stats import corpus_summary, gestures_aligned_with_sentence, gestures_overlapping
from .store import (
    AnnotationSet,
    AnnotationStore,
    BoundingBox,
    BoundingBoxTrack,
    Document,
    GestureAnnotation,
    Keyframe,
    MediaInfo,
    Provenance,
    Sentence,
    VisualObject,
    box_at,
)

__version__ = "0.1.0"
