import pytest
from hypothesis import given

from scriptgen import fixtures
from scriptgen.config import GenerationConfig
from scriptgen.distributor import AssignedItem, Assignment, assign_opinions, distribute
from scriptgen.knowledge import parse_fact_base, select_content
from scriptgen.scene_ir import ActType, Emotion, Polarity, linearize, validate_plan
from scriptgen.sequencer import emit_question_answer_pair, id_allocator, plan_sequence
from scriptgen.strategies import apply_association

from .strategies import pipeline_inputs


def _showroom_assignment(cfg):
    fb, personas, _ = fixtures.showroom()
    a = distribute(select_content(fb, personas, cfg), personas, cfg, fb)
    return fb, personas, assign_opinions(a, personas, fb, cfg)


def test_plain_three_acts():
    cfg = GenerationConfig("car1")
    fb, personas, a = _showroom_assignment(cfg)
    plan = plan_sequence(a, personas, cfg, fb)
    acts = [plan.act(i) for i in linearize(plan)]
    assert [(x.id, x.type, x.speaker) for x in acts] == [
        ("x1", ActType.QUESTION, "buyer"),
        ("x2", ActType.INFORM, "seller"),
        ("x3", ActType.EVALUATE, "buyer"),
    ]
    assert acts[1].reacts_to == ("x1",) and acts[2].reacts_to == ("x2",)
    assert validate_plan(plan).ok


def test_empty_assignment_with_bookends():
    fb, personas, _ = fixtures.showroom()
    cfg = GenerationConfig("car1", include_greeting=True, include_closing=True)
    plan = plan_sequence(Assignment(), personas, cfg, fb)
    assert [plan.act(i).type for i in linearize(plan)] == [ActType.GREET, ActType.CLOSE]
    assert plan.act("x1").speaker == "seller"


def _two_topic_fb():
    return parse_fact_base({
        "entities": [{"id": "c", "name": "car", "class": "car"}],
        "facts": [
            {"id": "f1", "entity": "c", "attribute": "airbags", "value": 6, "valence": 0.0, "emphasis": 0, "topic": "safety"},
            {"id": "f2", "entity": "c", "attribute": "speed", "value": 1, "valence": 0.0, "emphasis": 0, "topic": "performance"},
            {"id": "f3", "entity": "c", "attribute": "abs", "value": 1, "valence": 0.0, "emphasis": 0, "topic": "safety"},
        ],
    })


@pytest.mark.parametrize("priority", [("safety", "performance"), ("performance", "safety"), ()])
def test_pair_order_follows_topic_priority(priority):
    fb = _two_topic_fb()
    _, personas, _ = fixtures.showroom()
    cfg = GenerationConfig("c", topic_priority=priority)
    a = Assignment(tuple(AssignedItem(f, "seller", "buyer") for f in ("f1", "f2", "f3")))
    plan = plan_sequence(a, personas, cfg, fb)
    questions = [plan.act(i).content.proposition for i in linearize(plan) if plan.act(i).type is ActType.QUESTION]

    def rank(fid):
        t = fb.fact(fid).topic
        return (priority.index(t) if t in priority else len(priority), t, fid)
    assert questions == sorted(["f1", "f2", "f3"], key=rank)


def _emotion_oracle(valence):
    if valence > 0:
        return Emotion.ENTHUSIASM, valence
    if valence < 0:
        return Emotion.DISAPPOINTMENT, -valence
    return Emotion.NEUTRAL, 0.0


@pytest.mark.parametrize("valence", [1.0, 0.0, -1.0, 0.35])
def test_question_answer_pair(valence):
    fb = parse_fact_base({"entities": [{"id": "c", "name": "car", "class": "car"}], "facts": [
        {"id": "f", "entity": "c", "attribute": "speed", "value": 1, "valence": valence, "emphasis": 0, "topic": "t"}]})
    q, i = emit_question_answer_pair(AssignedItem("f", "s", "b"), id_allocator(), fb)
    assert (q.type, q.content.polarity, q.speaker, q.content.proposition) == (ActType.QUESTION, Polarity.QUERY, "b", "f")
    assert (i.type, i.content.polarity, i.reacts_to) == (ActType.INFORM, Polarity.ASSERT, (q.id,))
    assert (i.emotion.expressed, i.emotion.expressed_intensity) == _emotion_oracle(valence)
    assert i.emotion.felt == i.emotion.expressed


def test_association_emits_evidence_instead_of_evaluation():
    fb = fixtures.erasmus_fact_base()
    personas = fixtures.erasmus_personas()
    cfg = GenerationConfig("pilgrimage")
    a = assign_opinions(Assignment((AssignedItem("motive", "a", "c"),)), personas, fb, cfg)
    plan = plan_sequence(apply_association(a, fb), personas, cfg, fb)
    last = plan.act(linearize(plan)[-1])
    assert (last.type, last.content.proposition, last.speaker) == (ActType.INFORM, "partying", "c")
    assert not any(x.type is ActType.EVALUATE for x in plan.acts)
    # without the association rewrite, the same opinion is voiced outright
    plain = plan_sequence(a, personas, cfg, fb)
    assert plain.act(linearize(plain)[-1]).type is ActType.EVALUATE


@given(pipeline_inputs())
def test_sequenced_shape(inputs):
    fb, personas, cfg = inputs
    a = assign_opinions(distribute(select_content(fb, personas, cfg), personas, cfg, fb), personas, fb, cfg)
    if cfg.enable_association:
        a = apply_association(a, fb)
    plan = plan_sequence(a, personas, cfg, fb)
    opinions = sum(1 for i in a.items if i.opinion_mode != "none")
    assert len(plan.acts) == 2 * len(a.items) + opinions + cfg.include_greeting + cfg.include_closing
    order = linearize(plan)
    # a single chain: every consecutive pair is constrained, nothing else
    assert plan.constraints == set(zip(order, order[1:]))
    acts = plan.by_id()
    for x in plan.acts:
        if x.type is ActType.INFORM and acts[x.reacts_to[0]].type is ActType.QUESTION:
            assert len(x.reacts_to) == 1
            assert acts[x.reacts_to[0]].content.proposition == x.content.proposition
    assert validate_plan(plan).ok
