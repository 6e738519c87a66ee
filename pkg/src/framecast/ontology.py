"""Frame ontology: frames, frame elements, lexical units and frame relations.

The ontology is a single-writer / multi-reader store: reads are pure, writes
are serialized by an internal lock. All entity types are frozen value objects;
mutation means inserting new entities, never editing old ones in place.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

from . import errors

NAME_RE = re.compile(r"[A-Za-z0-9_]+")


class FrameKind(str, Enum):
    SEMANTIC = "semantic"
    PRAGMATIC = "pragmatic"


class Coreness(str, Enum):
    CORE = "core"
    PERIPHERAL = "peripheral"
    EXTRA_THEMATIC = "extra_thematic"


class PartOfSpeech(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    INTERJECTION = "interjection"
    OTHER = "other"


class RelationKind(str, Enum):
    INHERITS_FROM = "inherits_from"
    USES = "uses"
    SUBFRAME_OF = "subframe_of"


@dataclass(frozen=True)
class FrameElement:
    """A role within a frame, graded by how central it is to the frame."""

    name: str
    definition: str = ""
    coreness: Coreness = Coreness.CORE


@dataclass(frozen=True)
class Frame:
    """A named system of concepts with its roles. ``kind`` is fixed at creation."""

    name: str
    definition: str
    kind: FrameKind
    frame_elements: tuple[FrameElement, ...] = ()

    def fe(self, name: str) -> Optional[FrameElement]:
        for fe in self.frame_elements:
            if fe.name == name:
                return fe
        return None

    @property
    def fe_names(self) -> list[str]:
        return [fe.name for fe in self.frame_elements]


@dataclass(frozen=True)
class LexicalUnit:
    """A frame-evoking word or term; identified by (lemma, pos, frame)."""

    lemma: str
    pos: PartOfSpeech
    frame: str

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.lemma, self.pos.value, self.frame)

    def __str__(self) -> str:
        return f"{self.lemma}.{self.pos.value}@{self.frame}"


@dataclass(frozen=True)
class FrameRelation:
    """A typed directed link between two frames, optionally binding their FEs."""

    source: str
    kind: RelationKind
    target: str
    fe_bindings: tuple[tuple[str, str], ...] = ()

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.source, self.kind.value, self.target)


@dataclass(frozen=True)
class Finding:
    """One validation problem: which rule failed on which entity."""

    rule_id: str
    entity: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def add(self, rule_id: str, entity: str, message: str) -> None:
        self.findings.append(Finding(rule_id, entity, message))

    def __str__(self) -> str:
        if self.ok:
            return "0 findings"
        lines = [f"{len(self.findings)} findings"]
        for f in self.findings:
            lines.append(f"  [{f.rule_id}] {f.entity}: {f.message}")
        return "\n".join(lines)


FrameRef = Union[Frame, str]


def _frame_name(frame: FrameRef) -> str:
    return frame.name if isinstance(frame, Frame) else frame


class Ontology:
    """In-memory frame ontology with relation semantics and validation."""

    def __init__(self):
        self.frames: dict[str, Frame] = {}
        self.lexical_units: dict[tuple[str, str, str], LexicalUnit] = {}
        self.relations: list[FrameRelation] = []
        self._lock = threading.RLock()

    # -- mutation ------------------------------------------------------------

    def define_frame(
        self,
        name: str,
        definition: str,
        kind: FrameKind,
        frame_elements: Sequence[FrameElement] = (),
    ) -> Frame:
        if not name:
            raise errors.EmptyName("frame name must be non-empty")
        if not NAME_RE.fullmatch(name):
            raise errors.InvalidInputError(
                f"frame name {name!r} must use only letters, digits and underscore"
            )
        fe_names = [fe.name for fe in frame_elements]
        dupes = {n for n in fe_names if fe_names.count(n) > 1}
        if dupes:
            raise errors.DuplicateFrameElement(
                f"frame {name!r} repeats frame element(s): {sorted(dupes)}"
            )
        with self._lock:
            if name in self.frames:
                raise errors.DuplicateFrameName(f"frame {name!r} already defined")
            frame = Frame(name, definition, FrameKind(kind), tuple(frame_elements))
            self.frames[name] = frame
        return frame

    def add_lexical_unit(self, lemma: str, pos: PartOfSpeech, frame: FrameRef) -> LexicalUnit:
        if not lemma:
            raise errors.EmptyName("lexical unit lemma must be non-empty")
        frame_name = _frame_name(frame)
        with self._lock:
            if frame_name not in self.frames:
                raise errors.UnknownFrame(f"frame {frame_name!r} not defined")
            lu = LexicalUnit(lemma, PartOfSpeech(pos), frame_name)
            if lu.key in self.lexical_units:
                raise errors.DuplicateLexicalUnit(f"lexical unit {lu} already defined")
            self.lexical_units[lu.key] = lu
        return lu

    def add_relation(
        self,
        source: FrameRef,
        kind: RelationKind,
        target: FrameRef,
        fe_bindings: Iterable[tuple[str, str]] = (),
    ) -> FrameRelation:
        src, dst = _frame_name(source), _frame_name(target)
        kind = RelationKind(kind)
        if src == dst:
            raise errors.SelfRelation(f"relation {kind.value} cannot link {src!r} to itself")
        with self._lock:
            for name in (src, dst):
                if name not in self.frames:
                    raise errors.UnknownFrame(f"frame {name!r} not defined")
            relation = FrameRelation(src, kind, dst, tuple((a, b) for a, b in fe_bindings))
            if any(r.key == relation.key for r in self.relations):
                raise errors.DuplicateRelation(
                    f"relation {src} -{kind.value}-> {dst} already present"
                )
            for src_fe, dst_fe in relation.fe_bindings:
                if self.frames[src].fe(src_fe) is None:
                    raise errors.UnknownFrameElementInBinding(
                        f"binding names {src_fe!r}, not a frame element of {src!r}"
                    )
                if self.frames[dst].fe(dst_fe) is None:
                    raise errors.UnknownFrameElementInBinding(
                        f"binding names {dst_fe!r}, not a frame element of {dst!r}"
                    )
            if self._reachable(dst, src, kind):
                raise errors.CycleDetected(
                    f"adding {src} -{kind.value}-> {dst} would close a {kind.value} cycle"
                )
            self.relations.append(relation)
        return relation

    def _reachable(self, start: str, goal: str, kind: RelationKind) -> bool:
        """DFS over edges of one kind; used as the pre-insert cycle guard."""
        stack, seen = [start], set()
        while stack:
            current = stack.pop()
            if current == goal:
                return True
            if current in seen:
                continue
            seen.add(current)
            stack.extend(r.target for r in self.relations if r.kind is kind and r.source == current)
        return False

    # -- queries ---------------------------------------------------------------

    def frame(self, name: str) -> Frame:
        found = self.frames.get(name)
        if found is None:
            raise errors.UnknownFrame(f"frame {name!r} not defined")
        return found

    def lexical_unit(self, lemma: str, pos: PartOfSpeech, frame: FrameRef) -> LexicalUnit:
        key = (lemma, PartOfSpeech(pos).value, _frame_name(frame))
        found = self.lexical_units.get(key)
        if found is None:
            raise errors.UnknownLexicalUnit(f"lexical unit {'.'.join(key)} not defined")
        return found

    def relations_from(self, frame: FrameRef) -> list[FrameRelation]:
        name = _frame_name(frame)
        return [r for r in self.relations if r.source == name]

    def resolve_effective_fes(self, frame: FrameRef) -> list[tuple[FrameElement, str]]:
        """All frame elements available on ``frame``, each tagged with the frame
        that ultimately defines it.

        Own FEs come first, in definition order; an FE bound to an ancestor FE
        (through ``inherits_from`` or ``subframe_of`` bindings) is tagged with
        the ancestor's origin. Inherited-but-unbound FEs of ``inherits_from``
        targets follow, in relation insertion order. ``uses`` carries no FEs.
        """
        name = _frame_name(frame)
        self.frame(name)
        return self._resolve_fes(name, set())

    def _resolve_fes(self, name: str, visited: set[str]) -> list[tuple[FrameElement, str]]:
        if name in visited:
            return []
        visited.add(name)
        frame = self.frames[name]
        out: list[tuple[FrameElement, str]] = []
        seen: set[str] = set()
        for fe in frame.frame_elements:
            out.append((fe, self._binding_origin(name, fe.name, set())))
            seen.add(fe.name)
        for rel in self.relations:
            if rel.source != name or rel.kind is not RelationKind.INHERITS_FROM:
                continue
            if rel.target not in self.frames:
                continue
            bound_targets = {dst for _, dst in rel.fe_bindings}
            for fe, origin in self._resolve_fes(rel.target, visited):
                if fe.name in seen or fe.name in bound_targets:
                    continue
                seen.add(fe.name)
                out.append((fe, origin))
        return out

    def _binding_origin(self, frame_name: str, fe_name: str, visited: set) -> str:
        """Follow FE bindings upward to the frame where the role is defined."""
        key = (frame_name, fe_name)
        if key in visited:
            return frame_name
        visited.add(key)
        for rel in self.relations:
            if rel.source != frame_name or rel.kind is RelationKind.USES:
                continue
            if rel.target not in self.frames:
                continue
            for src_fe, dst_fe in rel.fe_bindings:
                if src_fe == fe_name:
                    return self._binding_origin(rel.target, dst_fe, visited)
        return frame_name

    def effective_fe_names(self, frame: FrameRef) -> list[str]:
        return [fe.name for fe, _ in self.resolve_effective_fes(frame)]

    def turn_family(self, root: FrameRef) -> set[Frame]:
        """All transitive subframes of ``root`` (via reversed subframe_of edges)."""
        name = _frame_name(root)
        self.frame(name)
        family: set[str] = set()
        frontier = [name]
        while frontier:
            current = frontier.pop()
            for rel in self.relations:
                if rel.kind is not RelationKind.SUBFRAME_OF or rel.target != current:
                    continue
                if rel.source != name and rel.source not in family:
                    family.add(rel.source)
                    frontier.append(rel.source)
        return {self.frames[n] for n in family if n in self.frames}

    # -- validation ------------------------------------------------------------

    def validate(self, report: Optional[ValidationReport] = None) -> ValidationReport:
        """Check every ontology invariant; problems become report findings."""
        report = report if report is not None else ValidationReport()
        for name, frame in self.frames.items():
            entity = f"frame:{name}"
            if not name:
                report.add("empty_name", entity, "frame name is empty")
            elif not NAME_RE.fullmatch(name):
                report.add("bad_name", entity, "frame name has characters outside [A-Za-z0-9_]")
            fe_names = frame.fe_names
            for dup in sorted({n for n in fe_names if fe_names.count(n) > 1}):
                report.add("duplicate_frame_element", entity, f"frame element {dup!r} repeated")
        for lu in self.lexical_units.values():
            if lu.frame not in self.frames:
                report.add(
                    "dangling_reference", f"lu:{lu}", f"lexical unit points at missing frame {lu.frame!r}"
                )
        for rel in self.relations:
            entity = f"relation:{rel.source}-{rel.kind.value}->{rel.target}"
            if rel.source == rel.target:
                report.add("self_relation", entity, "relation links a frame to itself")
            missing = [n for n in (rel.source, rel.target) if n not in self.frames]
            for name in missing:
                report.add("dangling_reference", entity, f"relation names missing frame {name!r}")
            if missing:
                continue
            for src_fe, dst_fe in rel.fe_bindings:
                if self.frames[rel.source].fe(src_fe) is None:
                    report.add(
                        "unknown_frame_element_in_binding",
                        entity,
                        f"binding source {src_fe!r} is not an FE of {rel.source!r}",
                    )
                if self.frames[rel.target].fe(dst_fe) is None:
                    report.add(
                        "unknown_frame_element_in_binding",
                        entity,
                        f"binding target {dst_fe!r} is not an FE of {rel.target!r}",
                    )
        for kind in RelationKind:
            for cycle_member in self._cycle_members(kind):
                report.add(
                    "cycle_detected",
                    f"frame:{cycle_member}",
                    f"frame participates in a {kind.value} cycle",
                )
        return report

    def _cycle_members(self, kind: RelationKind) -> list[str]:
        """Kahn's topological sort restricted to one relation kind; returns the
        frames left unsorted, i.e. the members of cycles."""
        edges = [(r.source, r.target) for r in self.relations if r.kind is kind]
        nodes = {n for edge in edges for n in edge}
        out_degree = {n: 0 for n in nodes}
        incoming: dict[str, set[str]] = {n: set() for n in nodes}
        for src, dst in edges:
            out_degree[src] += 1
            incoming[dst].add(src)
        ready = [n for n in nodes if out_degree[n] == 0]
        removed = set()
        while ready:
            node = ready.pop()
            removed.add(node)
            for src in incoming[node]:
                out_degree[src] -= 1
                if out_degree[src] == 0 and src not in removed:
                    ready.append(src)
        return sorted(nodes - removed)


def validate_ontology(store: Ontology) -> ValidationReport:
    return store.validate()
