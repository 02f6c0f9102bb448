"""Fact base and persona roster: types, strict parsing, content selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from .config import GenerationConfig
from .errors import InputError

Scalar = Union[int, float, str, bool]

PREDICATES = ("eq", "ge", "le")
TRAITS = ("extroversion", "agreeableness", "dominance", "indirectness")


@dataclass(frozen=True)
class Entity:
    id: str
    name: str
    entity_class: str


@dataclass(frozen=True)
class Fact:
    id: str
    entity: str
    attribute: str
    value: Scalar
    unit: Optional[str]
    valence: float
    emphasis: float
    topic: str


@dataclass(frozen=True)
class ImplicationRule:
    id: str
    attribute: str
    op: str
    threshold: Scalar
    implied_property: str
    valence: float

    def matches(self, fact: Fact) -> bool:
        if fact.attribute != self.attribute:
            return False
        if self.op == "eq":
            return fact.value == self.threshold
        if not (_is_number(fact.value) and _is_number(self.threshold)):
            return False
        if self.op == "ge":
            return fact.value >= self.threshold
        return fact.value <= self.threshold


@dataclass(frozen=True)
class FactBase:
    entities: tuple[Entity, ...]
    facts: tuple[Fact, ...]
    implications: tuple[ImplicationRule, ...]

    def entity(self, entity_id: str) -> Entity:
        for e in self.entities:
            if e.id == entity_id:
                return e
        raise InputError("unknown_entity", entity_id, f"no entity with id {entity_id!r}")

    def fact(self, fact_id: str) -> Fact:
        for f in self.facts:
            if f.id == fact_id:
                return f
        raise InputError("unknown_fact", fact_id, f"no fact with id {fact_id!r}")

    def has_fact(self, fact_id: str) -> bool:
        return any(f.id == fact_id for f in self.facts)

    def rules_matching(self, fact: Fact) -> list[ImplicationRule]:
        return [r for r in sorted(self.implications, key=lambda r: r.id) if r.matches(fact)]


@dataclass(frozen=True)
class Attitude:
    target: str
    valence: float


@dataclass(frozen=True)
class Persona:
    id: str
    name: str
    informer_weight: float
    elicitor_weight: float
    interests: tuple[tuple[str, float], ...]
    extroversion: float
    agreeableness: float
    dominance: float
    indirectness: float
    attitudes: tuple[Attitude, ...] = ()

    def interest(self, topic: str) -> float:
        for name, weight in self.interests:
            if name == topic:
                return weight
        return 0.0

    def attitude_towards(self, *targets: str) -> Optional[float]:
        """Valence of the first attitude whose target is among ``targets``
        (checked in the order given), or None."""
        for target in targets:
            for att in self.attitudes:
                if att.target == target:
                    return att.valence
        return None


@dataclass(frozen=True)
class ContentSelection:
    target: str
    fact_ids: tuple[str, ...]

    def __iter__(self):
        return iter(self.fact_ids)

    def __len__(self):
        return len(self.fact_ids)


# ---------------------------------------------------------------------------
# validation helpers


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _fields(doc: Any, what: str, ident: Any, required: Iterable[str], optional: Iterable[str] = ()) -> Mapping:
    if not isinstance(doc, Mapping):
        raise InputError("malformed", ident, f"{what} must be an object")
    required = tuple(required)
    allowed = set(required) | set(optional)
    for key in sorted(doc):
        if key not in allowed:
            raise InputError("unknown_field", ident, f"{what} has unknown field {key!r}")
    for key in required:
        if key not in doc:
            raise InputError("missing_field", ident, f"{what} lacks required field {key!r}")
    return doc


def _string(value: Any, name: str, ident: Any) -> str:
    if not isinstance(value, str) or not value:
        raise InputError("malformed", ident, f"{name} must be a non-empty string")
    return value


def _ranged(value: Any, name: str, ident: Any, lo: float, hi: float) -> float:
    if not _is_number(value):
        raise InputError("malformed", ident, f"{name} must be a number")
    if not lo <= value <= hi:
        raise InputError("out_of_range", ident, f"{name}={value!r} outside [{lo}, {hi}]")
    return value


def _list(doc: Mapping, key: str, ident: Any) -> list:
    value = doc.get(key, [])
    if not isinstance(value, list):
        raise InputError("malformed", ident, f"{key} must be an array")
    return value


def _unique(ids: Sequence[str], kind: str) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise InputError("duplicate_id", i, f"duplicate {kind} id {i!r}")
        seen.add(i)


def _ident_of(doc: Any, fallback: str) -> Any:
    if isinstance(doc, Mapping) and isinstance(doc.get("id"), str):
        return doc["id"]
    return fallback


# ---------------------------------------------------------------------------
# fact base


def parse_fact_base(doc: Any) -> FactBase:
    _fields(doc, "fact base", "<root>", ("entities",), ("facts", "implications"))
    entities = []
    for n, e in enumerate(_list(doc, "entities", "<root>")):
        ident = _ident_of(e, f"entities[{n}]")
        _fields(e, "entity", ident, ("id", "name", "class"))
        entities.append(Entity(_string(e["id"], "id", ident), _string(e["name"], "name", ident),
                               _string(e["class"], "class", ident)))

    facts = []
    for n, f in enumerate(_list(doc, "facts", "<root>")):
        ident = _ident_of(f, f"facts[{n}]")
        _fields(f, "fact", ident, ("id", "entity", "attribute", "value", "valence", "emphasis", "topic"), ("unit",))
        value = f["value"]
        if not isinstance(value, (int, float, str, bool)):
            raise InputError("malformed", ident, "value must be a scalar or string")
        unit = f.get("unit")
        if unit is not None:
            unit = _string(unit, "unit", ident)
        facts.append(Fact(
            id=_string(f["id"], "id", ident),
            entity=_string(f["entity"], "entity", ident),
            attribute=_string(f["attribute"], "attribute", ident),
            value=value,
            unit=unit,
            valence=_ranged(f["valence"], "valence", ident, -1.0, 1.0),
            emphasis=_ranged(f["emphasis"], "emphasis", ident, 0.0, 1.0),
            topic=_string(f["topic"], "topic", ident),
        ))

    rules = []
    for n, r in enumerate(_list(doc, "implications", "<root>")):
        ident = _ident_of(r, f"implications[{n}]")
        _fields(r, "implication rule", ident, ("id", "premise", "implies"))
        premise = _fields(r["premise"], "premise", ident, ("attribute", "op", "value"))
        implies = _fields(r["implies"], "implies", ident, ("property", "valence"))
        if premise["op"] not in PREDICATES:
            raise InputError("malformed", ident, f"op must be one of {PREDICATES}, got {premise['op']!r}")
        if not isinstance(premise["value"], (int, float, str, bool)):
            raise InputError("malformed", ident, "premise value must be a scalar or string")
        rules.append(ImplicationRule(
            id=_string(r["id"], "id", ident),
            attribute=_string(premise["attribute"], "attribute", ident),
            op=premise["op"],
            threshold=premise["value"],
            implied_property=_string(implies["property"], "property", ident),
            valence=_ranged(implies["valence"], "valence", ident, -1.0, 1.0),
        ))

    _unique([e.id for e in entities], "entity")
    _unique([f.id for f in facts], "fact")
    _unique([r.id for r in rules], "rule")
    entity_ids = {e.id for e in entities}
    pairs = set()
    for f in facts:
        if f.entity not in entity_ids:
            raise InputError("dangling_reference", f.id, f"fact refers to unknown entity {f.entity!r}")
        if (f.entity, f.attribute) in pairs:
            raise InputError("duplicate_id", f.id, f"second fact for ({f.entity}, {f.attribute})")
        pairs.add((f.entity, f.attribute))
    attributes = {f.attribute for f in facts}
    for r in rules:
        if r.attribute not in attributes:
            raise InputError("dangling_reference", r.id, f"premise attribute {r.attribute!r} appears on no fact")
    return FactBase(tuple(entities), tuple(facts), tuple(rules))


def serialize_fact_base(fb: FactBase) -> dict:
    facts = []
    for f in fb.facts:
        d = {"id": f.id, "entity": f.entity, "attribute": f.attribute, "value": f.value}
        if f.unit is not None:
            d["unit"] = f.unit
        d.update(valence=f.valence, emphasis=f.emphasis, topic=f.topic)
        facts.append(d)
    return {
        "entities": [{"id": e.id, "name": e.name, "class": e.entity_class} for e in fb.entities],
        "facts": facts,
        "implications": [
            {
                "id": r.id,
                "premise": {"attribute": r.attribute, "op": r.op, "value": r.threshold},
                "implies": {"property": r.implied_property, "valence": r.valence},
            }
            for r in fb.implications
        ],
    }


# ---------------------------------------------------------------------------
# personas


def parse_personas(doc: Any) -> list[Persona]:
    _fields(doc, "persona document", "<root>", ("personas",))
    personas = []
    for n, p in enumerate(_list(doc, "personas", "<root>")):
        ident = _ident_of(p, f"personas[{n}]")
        _fields(p, "persona", ident, ("id", "name", "role", "traits"), ("interests", "attitudes"))
        role = _fields(p["role"], "role", ident, ("informer_weight", "elicitor_weight"))
        informer = _ranged(role["informer_weight"], "informer_weight", ident, 0.0, 1.0)
        elicitor = _ranged(role["elicitor_weight"], "elicitor_weight", ident, 0.0, 1.0)
        if informer + elicitor <= 0:
            raise InputError("out_of_range", ident, "informer_weight + elicitor_weight must be positive")
        traits = _fields(p["traits"], "traits", ident, TRAITS)
        interests_doc = p.get("interests", {})
        if not isinstance(interests_doc, Mapping):
            raise InputError("malformed", ident, "interests must be an object")
        interests = tuple(
            (_string(topic, "interest topic", ident), _ranged(w, f"interest[{topic}]", ident, 0.0, 1.0))
            for topic, w in interests_doc.items()
        )
        attitudes = []
        for a in _list(p, "attitudes", ident):
            _fields(a, "attitude", ident, ("target", "valence"))
            attitudes.append(Attitude(_string(a["target"], "target", ident),
                                      _ranged(a["valence"], "attitude valence", ident, -1.0, 1.0)))
        personas.append(Persona(
            id=_string(p["id"], "id", ident),
            name=_string(p["name"], "name", ident),
            informer_weight=informer,
            elicitor_weight=elicitor,
            interests=interests,
            attitudes=tuple(attitudes),
            **{t: _ranged(traits[t], t, ident, 0.0, 1.0) for t in TRAITS},
        ))
    _unique([p.id for p in personas], "persona")
    return personas


def serialize_personas(personas: Sequence[Persona]) -> dict:
    return {
        "personas": [
            {
                "id": p.id,
                "name": p.name,
                "role": {"informer_weight": p.informer_weight, "elicitor_weight": p.elicitor_weight},
                "interests": dict(p.interests),
                "traits": {t: getattr(p, t) for t in TRAITS},
                "attitudes": [{"target": a.target, "valence": a.valence} for a in p.attitudes],
            }
            for p in personas
        ]
    }


# ---------------------------------------------------------------------------
# content selection


def select_content(fb: FactBase, personas: Sequence[Persona], cfg: GenerationConfig) -> ContentSelection:
    """Facts about the target entity that some persona cares about.

    Ordered by topic priority from ``cfg`` and then by fact id.
    """
    fb.entity(cfg.target_entity)
    chosen = [
        f for f in fb.facts
        if f.entity == cfg.target_entity and any(p.interest(f.topic) > 0 for p in personas)
    ]
    if not chosen:
        raise InputError("empty_selection", cfg.target_entity, "no fact about the target matches any persona interest")
    chosen.sort(key=lambda f: (cfg.topic_rank(f.topic), f.id))
    return ContentSelection(cfg.target_entity, tuple(f.id for f in chosen))
