"""Dialogue-act intermediate representation.

A :class:`ScenePlan` holds a set of acts and, separately, a partial
temporal order over them. Plans are immutable; every operation returns a
new plan.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable, Mapping, Optional, Sequence

from .errors import InputError, PlanError


class ActType(str, Enum):
    GREET = "greet"
    QUESTION = "question"
    INFORM = "inform"
    ECHO_QUESTION = "echo_question"
    CONFIRM = "confirm"
    EVALUATE = "evaluate"
    METADISCOURSE = "metadiscourse"
    CLOSE = "close"


class Polarity(str, Enum):
    ASSERT = "assert"
    QUERY = "query"
    REQUERY = "re-query"
    AGREE = "agree"


class Emotion(str, Enum):
    NEUTRAL = "neutral"
    ENTHUSIASM = "enthusiasm"
    DISAPPOINTMENT = "disappointment"


# discourse markers a proposition may name instead of a fact or property
MARKERS = frozenset({"greeting", "closing", "next_stage"})

QUESTION_TYPES = (ActType.QUESTION, ActType.ECHO_QUESTION)


@dataclass(frozen=True)
class SemanticContent:
    proposition: str
    polarity: Polarity


@dataclass(frozen=True)
class EmotionSpec:
    felt: Emotion = Emotion.NEUTRAL
    felt_intensity: float = 0.0
    expressed: Emotion = Emotion.NEUTRAL
    expressed_intensity: float = 0.0

    def __post_init__(self):
        for name in ("felt_intensity", "expressed_intensity"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InputError("out_of_range", name, f"emotion intensity {value!r} outside [0, 1]")

    @classmethod
    def from_valence(cls, valence: float) -> "EmotionSpec":
        """Enthusiasm for good news, disappointment for bad; felt = expressed."""
        if valence > 0:
            label = Emotion.ENTHUSIASM
        elif valence < 0:
            label = Emotion.DISAPPOINTMENT
        else:
            label = Emotion.NEUTRAL
        mag = abs(valence)
        return cls(label, mag, label, mag)


NEUTRAL = EmotionSpec()


@dataclass(frozen=True)
class DialogueAct:
    id: str
    type: ActType
    speaker: str
    addressees: tuple[str, ...]
    content: SemanticContent
    reacts_to: tuple[str, ...] = ()
    emotion: EmotionSpec = NEUTRAL

    def __post_init__(self):
        object.__setattr__(self, "addressees", tuple(sorted(set(self.addressees))))
        object.__setattr__(self, "reacts_to", tuple(sorted(set(self.reacts_to))))
        if not self.addressees:
            raise InputError("malformed", self.id, "an act needs at least one addressee")


@dataclass(frozen=True)
class InsertionRecord:
    anchor: str
    inserted: tuple[str, ...]
    reason: str  # "emphasis" | "style"


@dataclass(frozen=True)
class ScenePlan:
    participants: tuple[str, ...] = ()
    acts: tuple[DialogueAct, ...] = ()
    constraints: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "participants", tuple(self.participants))
        object.__setattr__(self, "acts", tuple(self.acts))
        object.__setattr__(self, "constraints", frozenset(tuple(c) for c in self.constraints))

    @property
    def act_ids(self) -> list[str]:
        return [a.id for a in self.acts]

    def act(self, act_id: str) -> DialogueAct:
        for a in self.acts:
            if a.id == act_id:
                return a
        raise PlanError("unknown_act", act_id, f"no act with id {act_id!r}")

    def has_act(self, act_id: str) -> bool:
        return any(a.id == act_id for a in self.acts)

    def by_id(self) -> dict[str, DialogueAct]:
        return {a.id: a for a in self.acts}


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


# ---------------------------------------------------------------------------
# rewrites


def add_act(plan: ScenePlan, act: DialogueAct, after: Optional[str] = None) -> ScenePlan:
    if plan.has_act(act.id):
        raise PlanError("duplicate_id", act.id, f"act id {act.id!r} already in plan")
    if after is not None and not plan.has_act(after):
        raise PlanError("unknown_anchor", after, f"anchor {after!r} not in plan")
    for r in act.reacts_to:
        if not plan.has_act(r):
            raise PlanError("dangling_reference", act.id, f"reacts_to unknown act {r!r}")
    constraints = set(plan.constraints)
    if after is not None:
        constraints.add((after, act.id))
    return replace(plan, acts=plan.acts + (act,), constraints=frozenset(constraints))


def insert_subsequence(plan: ScenePlan, anchor: str, acts: Sequence[DialogueAct]) -> ScenePlan:
    """Splice ``acts`` into the order directly after ``anchor``.

    Edges that left the anchor now leave the last inserted act, and the
    first inserted act is made to react to the anchor.
    """
    if not plan.has_act(anchor):
        raise PlanError("unknown_anchor", anchor, f"anchor {anchor!r} not in plan")
    if not acts:
        return plan
    existing = set(plan.act_ids)
    for a in acts:
        if a.id in existing:
            raise PlanError("duplicate_id", a.id, f"act id {a.id!r} already in plan")
        existing.add(a.id)
    acts = list(acts)
    first = acts[0]
    if anchor not in first.reacts_to:
        acts[0] = replace(first, reacts_to=first.reacts_to + (anchor,))
    for a in acts:
        for r in a.reacts_to:
            if r not in existing:
                raise PlanError("dangling_reference", a.id, f"reacts_to unknown act {r!r}")

    constraints = set()
    last = acts[-1].id
    for before, after in plan.constraints:
        constraints.add((last, after) if before == anchor else (before, after))
    constraints.add((anchor, acts[0].id))
    for prev, nxt in zip(acts, acts[1:]):
        constraints.add((prev.id, nxt.id))
    return replace(plan, acts=plan.acts + tuple(acts), constraints=frozenset(constraints))


# ---------------------------------------------------------------------------
# ordering


def _find_cycle_edge(nodes: Iterable[str], succ: Mapping[str, set]) -> tuple[str, str]:
    remaining = set(nodes)
    colour: dict[str, int] = {}
    for start in sorted(remaining):
        if start in colour:
            continue
        stack = [(start, iter(sorted(succ[start] & remaining)))]
        colour[start] = 1
        while stack:
            node, children = stack[-1]
            for child in children:
                if colour.get(child) == 1:
                    return (node, child)
                if child not in colour:
                    colour[child] = 1
                    stack.append((child, iter(sorted(succ[child] & remaining))))
                    break
            else:
                colour[node] = 2
                stack.pop()
    raise AssertionError("no cycle among remaining nodes")


def linearize(plan: ScenePlan) -> list[str]:
    """Topological order of the acts, always taking the smallest ready id."""
    ids = set(plan.act_ids)
    succ: dict[str, set] = defaultdict(set)
    indegree = {i: 0 for i in ids}
    for before, after in sorted(plan.constraints):
        if before not in ids or after not in ids:
            raise PlanError("dangling_reference", f"{before}->{after}", "constraint names an unknown act")
        if after not in succ[before]:
            succ[before].add(after)
            indegree[after] += 1
    ready = [i for i, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        node = heapq.heappop(ready)
        order.append(node)
        for child in succ[node]:
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(ready, child)
    if len(order) != len(ids):
        edge = _find_cycle_edge(ids - set(order), succ)
        raise PlanError("cycle", list(edge), f"temporal constraints contain a cycle through {edge[0]} -> {edge[1]}")
    return order


def transitive_closure(plan: ScenePlan) -> set[tuple[str, str]]:
    succ: dict[str, set] = defaultdict(set)
    for before, after in plan.constraints:
        succ[before].add(after)
    closure = set()
    for start in plan.act_ids:
        seen = set()
        stack = list(succ[start])
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(succ[n])
        closure.update((start, n) for n in seen)
    return closure


def validate_plan(plan: ScenePlan) -> ValidationReport:
    violations = []
    acts = plan.by_id()
    if len(acts) != len(plan.acts):
        seen = set()
        for a in plan.acts:
            if a.id in seen:
                violations.append(Violation("duplicate_id", (a.id,), f"act id {a.id!r} occurs twice"))
            seen.add(a.id)

    for before, after in sorted(plan.constraints):
        if before not in acts or after not in acts:
            violations.append(Violation("dangling_reference", (before, after), "constraint names an unknown act"))
    try:
        linearize(plan)
    except PlanError as err:
        if err.code == "cycle":
            violations.append(Violation("acyclicity", tuple(err.ident), err.message))

    closure = transitive_closure(plan)
    for a in plan.acts:
        if a.speaker in a.addressees:
            violations.append(Violation("speaker_in_addressees", (a.id,), f"{a.speaker} addresses itself"))
        for r in a.reacts_to:
            if r not in acts:
                violations.append(Violation("dangling_reference", (a.id, r), f"reacts_to unknown act {r!r}"))
            elif (r, a.id) not in closure:
                violations.append(Violation("backwards_reacts_to", (a.id, r), f"{a.id} reacts to {r} but is not ordered after it"))
        if a.type in QUESTION_TYPES:
            answered = any(
                a.id in b.reacts_to and b.speaker in a.addressees and (a.id, b.id) in closure
                for b in plan.acts
            )
            if not answered:
                violations.append(Violation("adjacency_closure", (a.id,), f"{a.type.value} {a.id} gets no reaction from an addressee"))
    return ValidationReport(tuple(violations))


# ---------------------------------------------------------------------------
# scene documents

_ACT_FIELDS = ("id", "type", "speaker", "addressees", "content", "reacts_to", "emotion")


def _emotion_doc(e: EmotionSpec) -> dict:
    return {
        "felt": {"label": e.felt.value, "intensity": e.felt_intensity},
        "expressed": {"label": e.expressed.value, "intensity": e.expressed_intensity},
    }


def serialize_scene(plan: ScenePlan, provenance: Sequence[InsertionRecord] = ()) -> dict:
    return {
        "participants": list(plan.participants),
        "acts": [
            {
                "id": a.id,
                "type": a.type.value,
                "speaker": a.speaker,
                "addressees": list(a.addressees),
                "content": {"proposition": a.content.proposition, "polarity": a.content.polarity.value},
                "reacts_to": list(a.reacts_to),
                "emotion": _emotion_doc(a.emotion),
            }
            for a in plan.acts
        ],
        "temporal_constraints": [list(c) for c in sorted(plan.constraints)],
        "provenance": [
            {"anchor": r.anchor, "inserted": list(r.inserted), "reason": r.reason} for r in provenance
        ],
    }


def _obj(doc: Any, keys: Sequence[str], what: str, ident: Any) -> Mapping:
    if not isinstance(doc, Mapping):
        raise InputError("schema", ident, f"{what} must be an object")
    if set(doc) != set(keys):
        extra = sorted(set(doc) - set(keys))
        missing = sorted(set(keys) - set(doc))
        raise InputError("schema", ident, f"{what}: unknown fields {extra}, missing fields {missing}")
    return doc


def _str_list(value: Any, what: str, ident: Any) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InputError("schema", ident, f"{what} must be an array of strings")
    return value


def _enum(cls, value: Any, what: str, ident: Any):
    try:
        return cls(value)
    except ValueError:
        raise InputError("schema", ident, f"unknown {what} {value!r}") from None


def _emotion(doc: Any, ident: Any) -> EmotionSpec:
    _obj(doc, ("felt", "expressed"), "emotion", ident)
    parts = []
    for side in ("felt", "expressed"):
        d = _obj(doc[side], ("label", "intensity"), f"emotion.{side}", ident)
        intensity = d["intensity"]
        if isinstance(intensity, bool) or not isinstance(intensity, (int, float)):
            raise InputError("schema", ident, "emotion intensity must be a number")
        parts += [_enum(Emotion, d["label"], "emotion label", ident), intensity]
    return EmotionSpec(*parts)


def parse_provenance(doc: Mapping) -> list[InsertionRecord]:
    records = []
    for r in doc.get("provenance", []):
        _obj(r, ("anchor", "inserted", "reason"), "provenance record", "provenance")
        if r["reason"] not in ("emphasis", "style"):
            raise InputError("schema", r["anchor"], f"unknown provenance reason {r['reason']!r}")
        records.append(InsertionRecord(r["anchor"], tuple(_str_list(r["inserted"], "inserted", r["anchor"])), r["reason"]))
    return records


def parse_scene(doc: Any) -> ScenePlan:
    if not isinstance(doc, Mapping):
        raise InputError("schema", "<root>", "scene document must be an object")
    required = {"participants", "acts", "temporal_constraints"}
    if not required <= set(doc) or not set(doc) <= required | {"provenance"}:
        raise InputError("schema", "<root>", f"scene document needs exactly {sorted(required)} (+ optional provenance)")
    participants = _str_list(doc["participants"], "participants", "<root>")
    if not isinstance(doc["acts"], list):
        raise InputError("schema", "<root>", "acts must be an array")
    acts = []
    for n, a in enumerate(doc["acts"]):
        ident = a.get("id", f"acts[{n}]") if isinstance(a, Mapping) else f"acts[{n}]"
        _obj(a, _ACT_FIELDS, "act", ident)
        content = _obj(a["content"], ("proposition", "polarity"), "content", ident)
        if not isinstance(content["proposition"], str):
            raise InputError("schema", ident, "proposition must be a string")
        if not isinstance(a["id"], str) or not isinstance(a["speaker"], str):
            raise InputError("schema", ident, "id and speaker must be strings")
        acts.append(DialogueAct(
            id=a["id"],
            type=_enum(ActType, a["type"], "act type", ident),
            speaker=a["speaker"],
            addressees=tuple(_str_list(a["addressees"], "addressees", ident)),
            content=SemanticContent(content["proposition"], _enum(Polarity, content["polarity"], "polarity", ident)),
            reacts_to=tuple(_str_list(a["reacts_to"], "reacts_to", ident)),
            emotion=_emotion(a["emotion"], ident),
        ))
    constraints = []
    if not isinstance(doc["temporal_constraints"], list):
        raise InputError("schema", "<root>", "temporal_constraints must be an array")
    for c in doc["temporal_constraints"]:
        pair = _str_list(c, "temporal constraint", "temporal_constraints")
        if len(pair) != 2:
            raise InputError("schema", "temporal_constraints", "each constraint is a [before, after] pair")
        constraints.append(tuple(pair))
    parse_provenance(doc)
    return ScenePlan(tuple(participants), tuple(acts), frozenset(constraints))
