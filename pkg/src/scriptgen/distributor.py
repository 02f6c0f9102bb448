"""Distribution: hand each selected fact to an informer and an elicitor, and
decide who voices an opinion about it."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .config import GenerationConfig
from .errors import InputError
from .knowledge import Fact, FactBase, Persona

OPINION_MODES = ("explicit", "implicit", "none")


@dataclass(frozen=True)
class AssignedItem:
    fact_id: str
    informer: str
    elicitor: str
    opinion_holder: Optional[str] = None
    opinion_mode: str = "none"
    opinion_valence: float = 0.0
    evidence: Optional[str] = None  # fact id attached by the association strategy

    def __post_init__(self):
        if self.informer == self.elicitor:
            raise InputError("same_speaker", self.fact_id, "informer and elicitor must differ")
        if self.opinion_mode not in OPINION_MODES:
            raise InputError("malformed", self.fact_id, f"unknown opinion mode {self.opinion_mode!r}")


@dataclass(frozen=True)
class Assignment:
    items: tuple[AssignedItem, ...] = ()

    def fact_ids(self) -> list[str]:
        return [i.fact_id for i in self.items]


def _argmax(personas: Sequence[Persona], score) -> Persona:
    # max score, ties to the smallest id
    return min(personas, key=lambda p: (-score(p), p.id))


def distribute(selection, personas: Sequence[Persona], cfg: GenerationConfig, fb: FactBase) -> Assignment:
    if len(personas) < 2:
        raise InputError("too_few_personas", len(personas), "dialogue needs at least two personas")
    if not len(selection):
        raise InputError("empty_selection", cfg.target_entity, "nothing to distribute")
    items = []
    for fact_id in selection:
        topic = fb.fact(fact_id).topic
        informer = _argmax(personas, lambda p: p.informer_weight * (1 + p.interest(topic)))
        rest = [p for p in personas if p.id != informer.id]
        elicitor = _argmax(rest, lambda p: p.elicitor_weight * (1 + p.interest(topic)))
        items.append(AssignedItem(fact_id, informer.id, elicitor.id))
    return Assignment(tuple(items))


def opinion_valence(holder: Persona, fact: Fact) -> float:
    """How the holder judges the fact: a personal attitude towards the
    attribute or the entity wins over the audience valence."""
    att = holder.attitude_towards(fact.attribute, fact.entity)
    return fact.valence if att is None else att


def assign_opinions(assignment: Assignment, personas: Sequence[Persona], fb: FactBase,
                    cfg: GenerationConfig) -> Assignment:
    by_id = {p.id: p for p in personas}
    items = []
    for item in assignment.items:
        fact = fb.fact(item.fact_id)
        if abs(fact.valence) < cfg.opinion_threshold or fact.valence == 0:
            items.append(replace(item, opinion_holder=None, opinion_mode="none", opinion_valence=0.0, evidence=None))
            continue
        holder = by_id[item.elicitor]
        has_rule = any(r.matches(f) for r in fb.implications for f in fb.facts if f.entity == fact.entity)
        indirect = holder.indirectness >= cfg.indirectness_threshold and has_rule
        items.append(replace(
            item,
            opinion_holder=holder.id,
            opinion_mode="implicit" if indirect else "explicit",
            opinion_valence=opinion_valence(holder, fact),
            evidence=None,
        ))
    return Assignment(tuple(items))
