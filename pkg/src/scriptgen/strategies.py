"""Transforms applied around sequencing.

* :func:`apply_association` rewrites the assignment before sequencing so
  that indirect speakers imply their opinion through an evidence fact.
* :func:`emphasize` inserts an echo-question/confirmation
  subdialogue after every strongly emphasized inform act.
* :func:`apply_style_markers` lets a dominant participant mark topic
  boundaries with a metadiscourse act.
"""

from __future__ import annotations

import re
from dataclasses import replace
from typing import Callable, Optional, Sequence

from .config import GenerationConfig
from .distributor import Assignment
from .knowledge import FactBase, Persona
from .scene_ir import (
    ActType,
    DialogueAct,
    InsertionRecord,
    Polarity,
    ScenePlan,
    SemanticContent,
    insert_subsequence,
    linearize,
)
from .sequencer import id_allocator

_Y_ID = re.compile(r"^y(\d+)$")


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def next_insert_ids(plan: ScenePlan) -> Callable[[], str]:
    """Continue the global y1, y2, ... numbering of inserted acts."""
    taken = [int(m.group(1)) for m in (_Y_ID.match(i) for i in plan.act_ids) if m]
    return id_allocator("y", max(taken, default=0) + 1)


def apply_association(assignment: Assignment, fb: FactBase) -> Assignment:
    items = []
    for item in assignment.items:
        if item.opinion_mode != "implicit":
            items.append(item)
            continue
        fact = fb.fact(item.fact_id)
        sign = _sign(item.opinion_valence)
        candidates = sorted(
            f.id for f in fb.facts
            if f.entity == fact.entity and f.id != fact.id and sign != 0
            and any(_sign(r.valence) == sign for r in fb.rules_matching(f))
        )
        if candidates:
            items.append(replace(item, evidence=candidates[0]))
        else:
            items.append(replace(item, opinion_mode="explicit", evidence=None))
    return Assignment(tuple(items))


def emphasize(plan: ScenePlan, fb: FactBase, cfg: GenerationConfig,
              next_id: Optional[Callable[[], str]] = None) -> tuple[ScenePlan, list[InsertionRecord]]:
    if not cfg.enable_emphasis:
        return plan, []
    next_id = next_id or next_insert_ids(plan)
    acts = plan.by_id()
    echoed = {r for a in plan.acts if a.type is ActType.ECHO_QUESTION for r in a.reacts_to}
    records = []
    for aid in linearize(plan):
        act = acts[aid]
        prop = act.content.proposition
        if act.type is not ActType.INFORM or aid in echoed or not fb.has_fact(prop):
            continue
        if fb.fact(prop).emphasis < cfg.emphasis_threshold:
            continue
        listener = act.addressees[0]
        echo = DialogueAct(
            id=next_id(),
            type=ActType.ECHO_QUESTION,
            speaker=listener,
            addressees=(act.speaker,),
            content=SemanticContent(prop, Polarity.REQUERY),
            reacts_to=(aid,),
            emotion=act.emotion,
        )
        confirm = DialogueAct(
            id=next_id(),
            type=ActType.CONFIRM,
            speaker=act.speaker,
            addressees=(listener,),
            content=SemanticContent(prop, Polarity.AGREE),
            reacts_to=(echo.id,),
            emotion=act.emotion,
        )
        plan = insert_subsequence(plan, aid, [echo, confirm])
        records.append(InsertionRecord(aid, (echo.id, confirm.id), "emphasis"))
    return plan, records


def apply_style_markers(plan: ScenePlan, personas: Sequence[Persona], cfg: GenerationConfig, fb: FactBase,
                        next_id: Optional[Callable[[], str]] = None) -> tuple[ScenePlan, list[InsertionRecord]]:
    if not cfg.enable_style_markers:
        return plan, []
    cast = [p for p in personas if p.id in plan.participants]
    if len(cast) < 2:
        return plan, []
    leader = min(cast, key=lambda p: (-p.dominance, p.id))
    if leader.dominance < cfg.dominance_threshold:
        return plan, []
    next_id = next_id or next_insert_ids(plan)

    acts = plan.by_id()
    order = linearize(plan)
    placed = sum(1 for a in plan.acts if a.type is ActType.METADISCOURSE)
    records = []
    topic = None
    for pos, aid in enumerate(order):
        act = acts[aid]
        if act.type is not ActType.QUESTION or not fb.has_fact(act.content.proposition):
            continue
        new_topic = fb.fact(act.content.proposition).topic
        if topic is not None and new_topic != topic:
            anchor = order[pos - 1]
            if acts[anchor].type is not ActType.METADISCOURSE and placed < cfg.max_style_markers:
                marker = DialogueAct(
                    id=next_id(),
                    type=ActType.METADISCOURSE,
                    speaker=leader.id,
                    addressees=tuple(p for p in plan.participants if p != leader.id),
                    content=SemanticContent("next_stage", Polarity.ASSERT),
                )
                plan = insert_subsequence(plan, anchor, [marker])
                records.append(InsertionRecord(anchor, (marker.id,), "style"))
                placed += 1
        topic = new_topic
    return plan, records


def remove_insertions(plan: ScenePlan, records: Sequence[InsertionRecord]) -> ScenePlan:
    """Undo the splices described by ``records`` (latest first)."""
    for rec in reversed(records):
        dropped = set(rec.inserted)
        last = rec.inserted[-1]
        constraints = set()
        for before, after in plan.constraints:
            if before == last:
                constraints.add((rec.anchor, after))
            elif before not in dropped and after not in dropped:
                constraints.add((before, after))
        plan = replace(
            plan,
            acts=tuple(a for a in plan.acts if a.id not in dropped),
            constraints=frozenset(constraints),
        )
    return plan
