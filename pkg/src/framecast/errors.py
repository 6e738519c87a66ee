"""Exception vocabulary shared by the library, the CLI and the HTTP service.

Every domain error carries a ``rule_id`` (a stable snake_case token) so the
service layer can surface it in API error bodies without string matching.
"""


class FramecastError(Exception):
    """Base class for all domain errors."""

    rule_id = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConflictError(FramecastError):
    """The request collides with existing state (duplicate identity, stale version)."""

    rule_id = "conflict"


class NotFoundError(FramecastError):
    """A referenced entity does not exist."""

    rule_id = "not_found"


class InvalidInputError(FramecastError):
    """The request is well-formed but violates a domain invariant."""

    rule_id = "invalid_input"


# --- ontology ---------------------------------------------------------------

class EmptyName(InvalidInputError):
    rule_id = "empty_name"


class DuplicateFrameName(ConflictError):
    rule_id = "duplicate_frame_name"


class DuplicateFrameElement(InvalidInputError):
    rule_id = "duplicate_frame_element"


class DuplicateLexicalUnit(ConflictError):
    rule_id = "duplicate_lexical_unit"


class DuplicateRelation(ConflictError):
    rule_id = "duplicate_relation"


class UnknownFrame(NotFoundError):
    rule_id = "unknown_frame"


class UnknownFrameElement(InvalidInputError):
    rule_id = "unknown_frame_element"


class UnknownFrameElementInBinding(InvalidInputError):
    rule_id = "unknown_frame_element_in_binding"


class SelfRelation(InvalidInputError):
    rule_id = "self_relation"


class CycleDetected(InvalidInputError):
    rule_id = "cycle_detected"


# --- annotation store -------------------------------------------------------

class DuplicateId(ConflictError):
    rule_id = "duplicate_id"


class UnknownDocument(NotFoundError):
    rule_id = "unknown_document"


class UnknownSentence(NotFoundError):
    rule_id = "unknown_sentence"


class UnknownLexicalUnit(NotFoundError):
    rule_id = "unknown_lexical_unit"


class UnknownVisualObject(NotFoundError):
    rule_id = "unknown_visual_object"


class UnknownGesture(NotFoundError):
    rule_id = "unknown_gesture"


class SpanOutOfBounds(InvalidInputError):
    rule_id = "span_out_of_bounds"


class OverlappingFeSpans(InvalidInputError):
    rule_id = "overlapping_fe_spans"


class BadBoxGeometry(InvalidInputError):
    rule_id = "bad_box_geometry"


class BadKeyframeOrder(InvalidInputError):
    rule_id = "bad_keyframe_order"


class TimeOutsideTrack(InvalidInputError):
    rule_id = "time_outside_track"


class EmptyMembers(InvalidInputError):
    rule_id = "empty_members"


class CrossDocumentMembers(InvalidInputError):
    rule_id = "cross_document_members"


class NonPragmaticFrame(InvalidInputError):
    rule_id = "non_pragmatic_frame"


class StaleVersion(ConflictError):
    rule_id = "stale_version"


# --- interchange ------------------------------------------------------------

class ParseError(FramecastError):
    rule_id = "parse_error"


class SchemaVersionUnsupported(ParseError):
    rule_id = "schema_version_unsupported"


class ValidationFailed(FramecastError):
    rule_id = "validation_failed"

    def __init__(self, report):
        findings = ", ".join(f"{f.rule_id}({f.entity})" for f in report.findings[:5])
        more = "" if len(report.findings) <= 5 else f" and {len(report.findings) - 5} more"
        super().__init__(f"store failed validation: {findings}{more}")
        self.report = report


# --- classifier -------------------------------------------------------------

class EmptyPrototypeSet(InvalidInputError):
    rule_id = "empty_prototype_set"


# --- blending ---------------------------------------------------------------

class DuplicateBinding(InvalidInputError):
    rule_id = "duplicate_binding"


class DegenerateGround(InvalidInputError):
    rule_id = "degenerate_ground"


class TooFewInputs(InvalidInputError):
    rule_id = "too_few_inputs"


class OrphanBlendElement(InvalidInputError):
    rule_id = "orphan_blend_element"


class FrameOutsideTurnFamily(InvalidInputError):
    rule_id = "frame_outside_turn_family"


class UnknownSpaceElement(InvalidInputError):
    rule_id = "unknown_space_element"


# --- stats ------------------------------------------------------------------

class EmptyInterval(InvalidInputError):
    rule_id = "empty_interval"


class SentenceHasNoTimeSpan(InvalidInputError):
    rule_id = "sentence_has_no_time_span"
