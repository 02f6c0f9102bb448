"""Template realization of a finished plan.

Template keys are ``type.polarity[.flag][@attribute]``. The flag
``follows_subdialogue`` picks the short forms used right after an
echo-question subdialogue; ``negative`` picks forms for acts that express
disappointment. Lookup falls back from the most specific key to the bare
``type.polarity`` entry.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from .errors import InputError, PlanError, RealizationError
from .knowledge import Fact, FactBase, Persona
from .scene_ir import (
    ActType,
    DialogueAct,
    Emotion,
    Polarity,
    ScenePlan,
    linearize,
    validate_plan,
)

FOLLOWS_SUBDIALOGUE = "follows_subdialogue"
NEGATIVE = "negative"
FLAGS = (FOLLOWS_SUBDIALOGUE, NEGATIVE)
PLACEHOLDERS = frozenset({"speaker", "entity", "attribute", "value", "unit", "property"})

_KEY = re.compile(r"^(?P<type>[a-z_]+)\.(?P<polarity>[a-z-]+)(?:\.(?P<flag>[a-z_]+))?(?:@(?P<attribute>\w+))?$")


@dataclass(frozen=True)
class TemplateSet:
    templates: Mapping[str, str]

    def __post_init__(self):
        for key, text in self.templates.items():
            m = _KEY.match(key)
            if not m:
                raise InputError("malformed", key, "template key must look like type.polarity[.flag][@attribute]")
            try:
                ActType(m["type"])
                Polarity(m["polarity"])
            except ValueError as err:
                raise InputError("malformed", key, str(err)) from None
            if m["flag"] is not None and m["flag"] not in FLAGS:
                raise InputError("malformed", key, f"unknown context flag {m['flag']!r}")
            if not isinstance(text, str):
                raise InputError("malformed", key, "template must be a string")
            for _, name, _, _ in string.Formatter().parse(text):
                if name is not None and name not in PLACEHOLDERS:
                    raise InputError("malformed", key, f"unknown placeholder {{{name}}}")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "TemplateSet":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise InputError("malformed", str(path), "template file must be a flat object")
        return cls(dict(doc))

    def lookup(self, act_type: ActType, polarity: Polarity, flags: Sequence[str] = (),
               attribute: Optional[str] = None) -> str:
        base = f"{act_type.value}.{polarity.value}"
        for flag in (*flags, None):
            stem = base if flag is None else f"{base}.{flag}"
            for key in ((f"{stem}@{attribute}", stem) if attribute else (stem,)):
                if key in self.templates:
                    return self.templates[key]
        raise RealizationError("missing_template", base, f"no template for {base}")


@dataclass(frozen=True)
class ScriptEntry:
    act_id: str
    speaker: str
    text: str


@dataclass(frozen=True)
class RealizedScript:
    entries: tuple[ScriptEntry, ...]
    source_plan: ScenePlan


def context_flags(plan: ScenePlan, order: Sequence[str]) -> dict[str, list[str]]:
    """Context flags per act id, most specific first."""
    acts = plan.by_id()
    echoes = {a.id for a in plan.acts if a.type is ActType.ECHO_QUESTION}
    closers = {a.id for a in plan.acts if a.type is ActType.CONFIRM and echoes.intersection(a.reacts_to)}
    flags = {}
    for pos, aid in enumerate(order):
        act = acts[aid]
        found = []
        if echoes.intersection(act.reacts_to) or (pos > 0 and order[pos - 1] in closers):
            found.append(FOLLOWS_SUBDIALOGUE)
        if act.emotion.expressed is Emotion.DISAPPOINTMENT:
            found.append(NEGATIVE)
        flags[aid] = found
    return flags


def _humanize(name: str) -> str:
    return name.replace("_", " ")


def _slots(act: DialogueAct, speakers: Mapping[str, Persona], fb: FactBase) -> dict[str, str]:
    slots = {"speaker": speakers[act.speaker].name if act.speaker in speakers else act.speaker}
    prop = act.content.proposition
    if fb.has_fact(prop):
        fact: Fact = fb.fact(prop)
        slots.update(
            entity=fb.entity(fact.entity).name,
            attribute=_humanize(fact.attribute),
            value=str(fact.value),
            unit=fact.unit or "",
        )
        rules = fb.rules_matching(fact)
        if rules:
            slots["property"] = _humanize(rules[0].implied_property)
    else:
        # property name or discourse marker
        slots["property"] = _humanize(prop)
    return slots


def _tidy(text: str) -> str:
    text = re.sub(r"[ \t]+", " ", text)
    return re.sub(r" ([.?!,;:])", r"\1", text).strip()


def realize(plan: ScenePlan, personas: Sequence[Persona], fb: FactBase, templates: TemplateSet) -> RealizedScript:
    report = validate_plan(plan)
    if not report.ok:
        v = report.violations[0]
        raise PlanError(v.kind, list(v.ids), v.message, stage="realize")
    order = linearize(plan)
    acts = plan.by_id()
    flags = context_flags(plan, order)
    speakers = {p.id: p for p in personas}
    entries = []
    for aid in order:
        act = acts[aid]
        attribute = fb.fact(act.content.proposition).attribute if fb.has_fact(act.content.proposition) else None
        template = templates.lookup(act.type, act.content.polarity, flags[aid], attribute)
        slots = _slots(act, speakers, fb)
        try:
            text = template.format(**slots)
        except KeyError as err:
            raise RealizationError("unresolved_placeholder", aid, f"cannot fill {{{err.args[0]}}} for act {aid}") from None
        entries.append(ScriptEntry(aid, slots["speaker"], _tidy(text)))
    return RealizedScript(tuple(entries), plan)


def render_transcript(script: RealizedScript) -> str:
    return "".join(f"{e.speaker}: {e.text}\n" for e in script.entries)
