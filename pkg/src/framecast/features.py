"""Coded feature record for one gesture event.

The boolean fields transcribe the interactive-gesture criteria (does the
gesture illustrate the topic; does its paraphrase stand apart from the topic
and address the interlocutor; is it oriented toward the comprehender). The
enum fields are the minimal form vocabulary needed to describe the turn
gestures: palm, arm, motion, hand shape and where the comprehender stands.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import errors


class PalmOrientation(str, Enum):
    UP = "up"
    DOWN = "down"
    TOWARD_COMPREHENDER = "toward_comprehender"
    LATERAL = "lateral"
    INWARD = "inward"


class ArmConfiguration(str, Enum):
    EXTENDED_FORWARD = "extended_forward"
    EXTENDED_LATERAL = "extended_lateral"
    BENT_UPWARD = "bent_upward"
    REACHING = "reaching"
    RETRACTED = "retracted"


class MotionPattern(str, Enum):
    STATIC_HOLD = "static_hold"
    EXTEND = "extend"
    RETRACT = "retract"
    CIRCULAR = "circular"
    BEAT = "beat"
    NOD = "nod"


class HandShape(str, Enum):
    OPEN_PALM = "open_palm"
    FINGERS_FLEXED = "fingers_flexed"
    FINGERS_EXTENDED = "fingers_extended"
    GRASP = "grasp"


class ComprehenderPosition(str, Enum):
    FACING = "facing"
    BESIDE = "beside"
    OTHER = "other"


@dataclass(frozen=True)
class GestureFeatures:
    topic_illustrative: bool
    paraphrase: Optional[str] = None
    paraphrase_topic_independent: bool = False
    paraphrase_addressed_to_interlocutor: bool = False
    orientation_toward_comprehender: bool = False
    palm_orientation: PalmOrientation = PalmOrientation.LATERAL
    arm_configuration: ArmConfiguration = ArmConfiguration.RETRACTED
    motion_pattern: MotionPattern = MotionPattern.STATIC_HOLD
    hand_shape: HandShape = HandShape.OPEN_PALM
    comprehender_position: ComprehenderPosition = ComprehenderPosition.FACING

    def __post_init__(self):
        if self.paraphrase is None and (
            self.paraphrase_topic_independent or self.paraphrase_addressed_to_interlocutor
        ):
            raise errors.InvalidInputError(
                "paraphrase_* flags require a paraphrase to be present"
            )


# Interchange field names, in canonical order.
FEATURE_FIELDS = (
    "topic_illustrative",
    "paraphrase",
    "paraphrase_topic_independent",
    "paraphrase_addressed_to_interlocutor",
    "orientation_toward_comprehender",
    "palm_orientation",
    "arm_configuration",
    "motion_pattern",
    "hand_shape",
    "comprehender_position",
)

ENUM_FIELDS = {
    "palm_orientation": PalmOrientation,
    "arm_configuration": ArmConfiguration,
    "motion_pattern": MotionPattern,
    "hand_shape": HandShape,
    "comprehender_position": ComprehenderPosition,
}

BOOL_FIELDS = (
    "topic_illustrative",
    "paraphrase_topic_independent",
    "paraphrase_addressed_to_interlocutor",
    "orientation_toward_comprehender",
)
