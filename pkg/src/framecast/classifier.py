"""Two-stage interactive-gesture classifier.

Stage one decides whether a gesture is a topic gesture, an interactive
gesture, or neither, from the coded feature record. Stage two matches
interactive gestures against per-frame prototypes and produces a ranked,
thresholded verdict. Scores are exact rationals so ties and thresholds never
hinge on float noise.

All functions are pure over immutable inputs and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from . import errors
from .features import BOOL_FIELDS, ENUM_FIELDS, GestureFeatures

Rational = Union[int, float, str, Fraction]


class Interactivity(str, Enum):
    TOPIC = "topic"
    INTERACTIVE = "interactive"
    INDETERMINATE = "indeterminate"


# Feature values close enough to count half: a sideways variant of a forward
# arm, and a comprehender walking beside instead of facing.
NEAR_PAIRS: dict[str, set[frozenset]] = {
    "arm_configuration": {frozenset({"extended_forward", "extended_lateral"})},
    "comprehender_position": {frozenset({"facing", "beside"})},
}

MATCHABLE_FIELDS = tuple(BOOL_FIELDS) + tuple(ENUM_FIELDS)

DEFAULT_TAU = Fraction(3, 5)
DEFAULT_DELTA = Fraction(1, 10)


def to_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class Prototype:
    """The central exemplar of one gesture category.

    ``template`` constrains a subset of the feature fields; each constrained
    field may allow one value or a tuple of alternatives. ``weights`` must
    cover exactly the constrained fields and be positive.
    """

    frame: str
    template: Mapping[str, object]
    weights: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        template = dict(self.template)
        weights = {k: to_fraction(v) for k, v in (self.weights or {}).items()}
        if not weights:
            weights = {k: Fraction(1) for k in template}
        for fname in template:
            if fname not in MATCHABLE_FIELDS:
                raise errors.InvalidInputError(
                    f"prototype {self.frame!r} constrains unknown field {fname!r}"
                )
        if set(weights) != set(template):
            raise errors.InvalidInputError(
                f"prototype {self.frame!r} weights must cover exactly the constrained fields"
            )
        for fname, w in weights.items():
            if w <= 0:
                raise errors.InvalidInputError(
                    f"prototype {self.frame!r} weight for {fname!r} must be positive"
                )
        object.__setattr__(self, "template", template)
        object.__setattr__(self, "weights", weights)

    def allowed_values(self, fname: str) -> tuple:
        value = self.template[fname]
        return tuple(value) if isinstance(value, (tuple, list, set, frozenset)) else (value,)


@dataclass(frozen=True)
class ClassificationResult:
    interactivity: Interactivity
    ranking: tuple[tuple[str, Fraction], ...]
    verdict: Optional[str]
    margin: Fraction

    def __post_init__(self):
        scores = [s for _, s in self.ranking]
        if scores != sorted(scores, reverse=True):
            raise errors.InvalidInputError("ranking must be sorted by descending score")
        if self.verdict is not None and (not self.ranking or self.ranking[0][0] != self.verdict):
            raise errors.InvalidInputError("verdict must equal the top-ranked frame")

    @property
    def top_score(self) -> Fraction:
        return self.ranking[0][1] if self.ranking else Fraction(0)


def classify_interactivity(features: GestureFeatures) -> Interactivity:
    """Topic if the gesture illustrates speech; interactive only when the
    paraphrase criteria and the orientation criterion all hold."""
    if features.topic_illustrative:
        return Interactivity.TOPIC
    if (
        features.paraphrase_topic_independent
        and features.paraphrase_addressed_to_interlocutor
        and features.orientation_toward_comprehender
    ):
        return Interactivity.INTERACTIVE
    return Interactivity.INDETERMINATE


def _field_value(features: GestureFeatures, fname: str):
    value = getattr(features, fname)
    return value.value if isinstance(value, Enum) else value


def _match(feature_value, allowed, fname: str) -> Fraction:
    best = Fraction(0)
    near = NEAR_PAIRS.get(fname, set())
    for candidate in allowed:
        cv = candidate.value if isinstance(candidate, Enum) else candidate
        if cv == feature_value:
            return Fraction(1)
        if frozenset({cv, feature_value}) in near:
            best = max(best, Fraction(1, 2))
    return best


def score_prototype(features: GestureFeatures, prototype: Prototype) -> Fraction:
    """Weighted resemblance to the prototype, normalized into [0, 1]."""
    total = sum(prototype.weights.values(), Fraction(0))
    acc = Fraction(0)
    for fname, weight in prototype.weights.items():
        acc += weight * _match(_field_value(features, fname), prototype.allowed_values(fname), fname)
    return acc / total


def classify_turn_frame(
    features: GestureFeatures,
    prototypes: Sequence[Prototype],
    tau: Rational = DEFAULT_TAU,
    delta: Rational = DEFAULT_DELTA,
) -> ClassificationResult:
    """Rank every prototype's frame by score and threshold the winner.

    A verdict is produced only for interactive gestures whose top score
    reaches ``tau`` and leads the runner-up by at least ``delta``; a tied top
    never yields a verdict. Ranking ties break by frame name.
    """
    if not prototypes:
        raise errors.EmptyPrototypeSet("at least one prototype is required")
    tau, delta = to_fraction(tau), to_fraction(delta)
    if not 0 <= tau <= 1:
        raise errors.InvalidInputError("tau must lie in [0, 1]")
    if delta < 0:
        raise errors.InvalidInputError("delta must be non-negative")

    interactivity = classify_interactivity(features)
    scored = [(p.frame, score_prototype(features, p)) for p in prototypes]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    ranking = tuple(scored)

    top_frame, top_score = ranking[0]
    second_score = ranking[1][1] if len(ranking) > 1 else Fraction(0)
    margin = top_score - second_score

    verdict = None
    if (
        interactivity is Interactivity.INTERACTIVE
        and top_score >= tau
        and margin >= delta
        and not (len(ranking) > 1 and ranking[1][1] == top_score)
    ):
        verdict = top_frame
    return ClassificationResult(interactivity, ranking, verdict, margin)


def default_prototypes() -> list[Prototype]:
    """The shipped prototype table, transcribing the described gesture forms.

    Turn_confirmation has no described form; its template is a placeholder
    (head nod or beat over an upturned palm) pending corpus evidence.
    """
    return [
        Prototype(
            "Turn_passing",
            {
                "arm_configuration": "extended_forward",
                "palm_orientation": "up",
                "hand_shape": "fingers_flexed",
                "motion_pattern": "extend",
                "comprehender_position": "facing",
            },
        ),
        Prototype(
            "Turn_keeping",
            {
                "palm_orientation": "toward_comprehender",
                "arm_configuration": "bent_upward",
                "motion_pattern": "static_hold",
            },
        ),
        Prototype(
            "Turn_taking",
            {
                "arm_configuration": "reaching",
                "hand_shape": "grasp",
                "orientation_toward_comprehender": True,
            },
        ),
        Prototype(
            "Turn_confirmation",
            {
                "motion_pattern": ("nod", "beat"),
                "palm_orientation": "up",
            },
        ),
        Prototype(
            "Assistance_request",
            {
                "motion_pattern": "circular",
                "palm_orientation": "up",
            },
        ),
    ]
