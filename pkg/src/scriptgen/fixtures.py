"""Ready-made inputs: the car showroom, and two hand-built sequenced plans
(an old man/young man exchange and a two-pilgrim exchange) whose acts are
numbered the way the original dialogues number their turns."""

from __future__ import annotations

from . import data_path
from .knowledge import FactBase, Persona, parse_fact_base, parse_personas
from .pipeline import load_json
from .realizer import TemplateSet
from .scene_ir import ActType, DialogueAct, EmotionSpec, Polarity, ScenePlan, SemanticContent, add_act


def showroom() -> tuple[FactBase, list[Persona], TemplateSet]:
    return (
        parse_fact_base(load_json(data_path("showroom", "facts.json"), "facts")),
        parse_personas(load_json(data_path("showroom", "personas.json"), "personas")),
        TemplateSet.load(data_path("showroom", "templates.json")),
    )


def _persona(pid: str, name: str, informer: float, elicitor: float, **traits) -> dict:
    base = {"extroversion": 0.5, "agreeableness": 0.5, "dominance": 0.5, "indirectness": 0.5}
    base.update(traits)
    return {"id": pid, "name": name, "role": {"informer_weight": informer, "elicitor_weight": elicitor},
            "interests": {}, "traits": base, "attitudes": []}


def _chain(participants, acts) -> ScenePlan:
    plan = ScenePlan(participants=participants)
    last = None
    for act in acts:
        plan = add_act(plan, act, after=last)
        last = act.id
    return plan


def _act(aid, kind, speaker, listener, prop, polarity, reacts=(), valence=0.0) -> DialogueAct:
    return DialogueAct(aid, kind, speaker, (listener,), SemanticContent(prop, polarity), reacts,
                       EmotionSpec.from_valence(valence))


# -- old man / young man ----------------------------------------------------

def twain_fact_base() -> FactBase:
    return parse_fact_base({
        "entities": [{"id": "impulse", "name": "the impulse", "class": "doctrine"}],
        "facts": [
            {"id": "impulse_count", "entity": "impulse", "attribute": "impulse_count", "value": "one",
             "valence": 0.0, "emphasis": 0.9, "topic": "doctrine"},
            {"id": "sole_impulse", "entity": "impulse", "attribute": "sole_impulse",
             "value": "keep one's conscience quiet", "valence": 0.0, "emphasis": 0.2, "topic": "doctrine"},
        ],
    })


def twain_personas() -> list[Persona]:
    return parse_personas({"personas": [_persona("om", "O.M.", 1.0, 0.0), _persona("ym", "Y.M.", 0.0, 1.0)]})


def twain_base_plan() -> ScenePlan:
    """Turns 1, 2, 5, 6: two question/answer pairs, nothing inserted yet."""
    Q, I = ActType.QUESTION, ActType.INFORM
    return _chain(("om", "ym"), [
        _act("1", Q, "ym", "om", "impulse_count", Polarity.QUERY),
        _act("2", I, "om", "ym", "impulse_count", Polarity.ASSERT, ("1",)),
        _act("5", Q, "ym", "om", "sole_impulse", Polarity.QUERY, ("2",)),
        _act("6", I, "om", "ym", "sole_impulse", Polarity.ASSERT, ("5",)),
    ])


def twain_templates() -> TemplateSet:
    return TemplateSet.load(data_path("twain", "templates.json"))


# -- two pilgrims -----------------------------------------------------------

def erasmus_fact_base() -> FactBase:
    return parse_fact_base({
        "entities": [{"id": "pilgrimage", "name": "the pilgrimage", "class": "journey"}],
        "facts": [
            {"id": "destination", "entity": "pilgrimage", "attribute": "destination", "value": "Jerusalem",
             "valence": 0.0, "emphasis": 0.1, "topic": "journey"},
            {"id": "motive", "entity": "pilgrimage", "attribute": "motive", "value": "folly",
             "valence": -0.8, "emphasis": 0.9, "topic": "journey"},
            {"id": "partying", "entity": "pilgrimage", "attribute": "did_action", "value": "partying",
             "valence": -0.5, "emphasis": 0.3, "topic": "conduct"},
        ],
        "implications": [
            {"id": "frivolity", "premise": {"attribute": "did_action", "op": "eq", "value": "partying"},
             "implies": {"property": "frivolous", "valence": -1.0}},
        ],
    })


def erasmus_personas() -> list[Persona]:
    a = _persona("a", "A", 0.4, 1.0, indirectness=0.2)
    c = _persona("c", "C", 1.0, 0.6, indirectness=0.9)
    c["attitudes"] = [{"target": "pilgrimage", "valence": -1.0}]
    return parse_personas({"personas": [a, c]})


def erasmus_base_plan() -> ScenePlan:
    """Turns 1, 2, 3, 6. Turn 3 raises the motive, turn 6 is C's verdict on it."""
    return _chain(("a", "c"), [
        _act("1", ActType.QUESTION, "a", "c", "destination", Polarity.QUERY),
        _act("2", ActType.INFORM, "c", "a", "destination", Polarity.ASSERT, ("1",)),
        _act("3", ActType.INFORM, "a", "c", "motive", Polarity.ASSERT, ("2",), valence=-0.8),
        _act("6", ActType.EVALUATE, "c", "a", "motive", Polarity.ASSERT, ("3",), valence=-0.8),
    ])


def erasmus_templates() -> TemplateSet:
    return TemplateSet.load(data_path("erasmus", "templates.json"))
