"""Sequencing: expand an assignment into a totally ordered plan of
question/answer pairs, optional opinions, and optional greeting/closing."""

from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence

from .config import GenerationConfig
from .distributor import AssignedItem, Assignment
from .knowledge import FactBase, Persona
from .scene_ir import (
    ActType,
    DialogueAct,
    EmotionSpec,
    Polarity,
    ScenePlan,
    SemanticContent,
    add_act,
)

__all__ = ["GenerationConfig", "id_allocator", "emit_question_answer_pair", "plan_sequence"]


def id_allocator(prefix: str = "x", start: int = 1) -> Callable[[], str]:
    counter: Iterator[int] = iter(range(start, 1 << 62))
    return lambda: f"{prefix}{next(counter)}"


def emit_question_answer_pair(item: AssignedItem, next_id: Callable[[], str], fb: FactBase) -> tuple[DialogueAct, DialogueAct]:
    fact = fb.fact(item.fact_id)
    question = DialogueAct(
        id=next_id(),
        type=ActType.QUESTION,
        speaker=item.elicitor,
        addressees=(item.informer,),
        content=SemanticContent(item.fact_id, Polarity.QUERY),
    )
    inform = DialogueAct(
        id=next_id(),
        type=ActType.INFORM,
        speaker=item.informer,
        addressees=(item.elicitor,),
        content=SemanticContent(item.fact_id, Polarity.ASSERT),
        reacts_to=(question.id,),
        emotion=EmotionSpec.from_valence(fact.valence),
    )
    return question, inform


def _bookend(personas: Sequence[Persona], act_type: ActType, marker: str, next_id) -> DialogueAct:
    host = min(personas, key=lambda p: (-p.informer_weight, p.id))
    return DialogueAct(
        id=next_id(),
        type=act_type,
        speaker=host.id,
        addressees=tuple(p.id for p in personas if p.id != host.id),
        content=SemanticContent(marker, Polarity.ASSERT),
    )


def plan_sequence(assignment: Assignment, personas: Sequence[Persona], cfg: GenerationConfig,
                  fb: FactBase, next_id: Optional[Callable[[], str]] = None) -> ScenePlan:
    next_id = next_id or id_allocator("x")
    plan = ScenePlan(participants=tuple(sorted(p.id for p in personas)))
    last = None

    def push(act: DialogueAct):
        nonlocal plan, last
        plan = add_act(plan, act, after=last)
        last = act.id

    if cfg.include_greeting:
        push(_bookend(personas, ActType.GREET, "greeting", next_id))

    # stable sort keeps assignment order within a topic
    items = sorted(assignment.items, key=lambda i: cfg.topic_rank(fb.fact(i.fact_id).topic))
    for item in items:
        question, inform = emit_question_answer_pair(item, next_id, fb)
        push(question)
        push(inform)
        if item.opinion_mode == "none":
            continue
        if item.opinion_mode == "implicit" and item.evidence is not None:
            evidence = fb.fact(item.evidence)
            push(DialogueAct(
                id=next_id(),
                type=ActType.INFORM,
                speaker=item.opinion_holder,
                addressees=(item.informer,),
                content=SemanticContent(item.evidence, Polarity.ASSERT),
                reacts_to=(inform.id,),
                emotion=EmotionSpec.from_valence(evidence.valence),
            ))
        else:
            push(DialogueAct(
                id=next_id(),
                type=ActType.EVALUATE,
                speaker=item.opinion_holder,
                addressees=(item.informer,),
                content=SemanticContent(item.fact_id, Polarity.ASSERT),
                reacts_to=(inform.id,),
                emotion=EmotionSpec.from_valence(item.opinion_valence),
            ))

    if cfg.include_closing:
        push(_bookend(personas, ActType.CLOSE, "closing", next_id))
    return plan
