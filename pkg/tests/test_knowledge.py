import itertools

import pytest
from hypothesis import given

from scriptgen import fixtures
from scriptgen.config import GenerationConfig
from scriptgen.errors import InputError
from scriptgen.knowledge import (
    parse_fact_base,
    parse_personas,
    select_content,
    serialize_fact_base,
    serialize_personas,
)

from .strategies import fact_bases, persona_lists


def _fact(fid, attribute, topic="performance", entity="car1", **extra):
    doc = {"id": fid, "entity": entity, "attribute": attribute, "value": 1, "valence": 0.0,
           "emphasis": 0.5, "topic": topic}
    doc.update(extra)
    return doc


def _persona(pid, interests, informer=0.5, elicitor=0.5, **traits):
    t = {"extroversion": 0.5, "agreeableness": 0.5, "dominance": 0.5, "indirectness": 0.5}
    t.update(traits)
    return {"id": pid, "name": pid.upper(), "role": {"informer_weight": informer, "elicitor_weight": elicitor},
            "interests": interests, "traits": t}


CAR = [{"id": "car1", "name": "the car", "class": "car"}]


def test_minimal_fact_base():
    fb = parse_fact_base({"entities": CAR, "facts": [], "implications": []})
    assert fb.facts == ()
    assert fb.entity("car1").entity_class == "car"


def test_showroom_top_speed_fact():
    fb, _, _ = fixtures.showroom()
    fact = fb.fact("f01")
    assert (fact.entity, fact.attribute, fact.value, fact.unit) == ("car1", "top_speed", 180, "mph")
    assert (fact.valence, fact.emphasis) == (1.0, 0.9)


def test_rule_with_unmatched_attribute_names_rule():
    doc = {"entities": CAR, "facts": [_fact("f1", "top_speed")], "implications": [
        {"id": "r_bad", "premise": {"attribute": "wingspan", "op": "ge", "value": 3},
         "implies": {"property": "odd", "valence": -0.5}}]}
    with pytest.raises(InputError) as err:
        parse_fact_base(doc)
    assert err.value.code == "dangling_reference"
    assert err.value.ident == "r_bad"


@pytest.mark.parametrize("mutate, code, ident", [
    (lambda d: d["facts"].append(_fact("f1", "colour")), "duplicate_id", "f1"),
    (lambda d: d["facts"].append(_fact("f2", "colour", entity="car9")), "dangling_reference", "f2"),
    (lambda d: d["facts"][0].update(valence=1.5), "out_of_range", "f1"),
    (lambda d: d["facts"][0].update(emphasis=-0.1), "out_of_range", "f1"),
    (lambda d: d["facts"][0].update(colour="red"), "unknown_field", "f1"),
    (lambda d: d["facts"].append(_fact("f3", "top_speed")), "duplicate_id", "f3"),
    (lambda d: d["entities"].append(dict(CAR[0])), "duplicate_id", "car1"),
    (lambda d: d.update(extra=[]), "unknown_field", "<root>"),
    (lambda d: d["facts"][0].pop("topic"), "missing_field", "f1"),
])
def test_fact_base_errors(mutate, code, ident):
    doc = {"entities": [dict(e) for e in CAR], "facts": [_fact("f1", "top_speed")], "implications": []}
    mutate(doc)
    with pytest.raises(InputError) as err:
        parse_fact_base(doc)
    assert (err.value.code, err.value.ident) == (code, ident)


def test_bad_rule_op():
    doc = {"entities": CAR, "facts": [_fact("f1", "top_speed")], "implications": [
        {"id": "r1", "premise": {"attribute": "top_speed", "op": "gt", "value": 3},
         "implies": {"property": "fast", "valence": 1}}]}
    with pytest.raises(InputError, match="op must be one of"):
        parse_fact_base(doc)


def test_seller_and_buyer_parse():
    personas = parse_personas({"personas": [
        _persona("seller", {}, informer=1.0, elicitor=0.0),
        _persona("buyer", {"performance": 1.0}, informer=0.0, elicitor=1.0),
    ]})
    assert [p.id for p in personas] == ["seller", "buyer"]
    assert personas[1].interest("performance") == 1.0
    assert personas[1].interest("safety") == 0.0


def test_dominance_out_of_range():
    with pytest.raises(InputError) as err:
        parse_personas({"personas": [_persona("p", {}, dominance=1.5)]})
    assert (err.value.code, err.value.ident) == ("out_of_range", "p")


def test_empty_persona_list():
    assert parse_personas({"personas": []}) == []


def test_duplicate_persona_and_zero_role():
    with pytest.raises(InputError, match="duplicate"):
        parse_personas({"personas": [_persona("p", {}), _persona("p", {})]})
    with pytest.raises(InputError, match="must be positive"):
        parse_personas({"personas": [_persona("p", {}, informer=0.0, elicitor=0.0)]})


@given(fact_bases())
def test_fact_base_round_trip(fb):
    assert parse_fact_base(serialize_fact_base(fb)) == fb


@given(persona_lists())
def test_persona_round_trip(personas):
    assert parse_personas(serialize_personas(personas)) == personas


# -- content selection -------------------------------------------------------

def _selection_fixture():
    fb = parse_fact_base({"entities": CAR + [{"id": "car2", "name": "x", "class": "car"}], "facts": [
        _fact("f_speed", "top_speed", "performance"),
        _fact("f_colour", "colour", "appearance"),
        _fact("f_accel", "acceleration", "performance"),
        _fact("f_bags", "airbags", "safety"),
        _fact("f_other", "top_speed", "performance", entity="car2"),
    ]})
    return fb


def test_select_single_interest():
    fb = parse_fact_base({"entities": CAR, "facts": [_fact("f1", "top_speed"), _fact("f2", "colour", "appearance")]})
    buyer = parse_personas({"personas": [_persona("buyer", {"performance": 1.0})]})
    sel = select_content(fb, buyer, GenerationConfig("car1"))
    assert sel.fact_ids == ("f1",)


def _oracle_order(fb, ids, cfg):
    # exhaustive: the unique permutation whose (rank, id) keys never decrease
    def key(fid):
        t = fb.fact(fid).topic
        rank = cfg.topic_priority.index(t) if t in cfg.topic_priority else len(cfg.topic_priority)
        return (rank, "" if t in cfg.topic_priority else t, fid)
    for perm in itertools.permutations(ids):
        keys = [key(f) for f in perm]
        if all(a <= b for a, b in zip(keys, keys[1:])):
            return perm


@pytest.mark.parametrize("priority", [(), ("performance", "safety"), ("safety", "performance"), ("safety",)])
def test_select_order_matches_oracle(priority):
    fb = _selection_fixture()
    personas = parse_personas({"personas": [_persona("p", {"performance": 0.5, "safety": 0.2})]})
    cfg = GenerationConfig("car1", topic_priority=priority)
    sel = select_content(fb, personas, cfg)
    assert set(sel.fact_ids) == {"f_speed", "f_accel", "f_bags"}
    assert sel.fact_ids == _oracle_order(fb, sel.fact_ids, cfg)


def test_same_topic_ordered_by_id():
    fb = _selection_fixture()
    personas = parse_personas({"personas": [_persona("p", {"performance": 1.0})]})
    assert select_content(fb, personas, GenerationConfig("car1")).fact_ids == ("f_accel", "f_speed")


def test_select_unknown_entity():
    with pytest.raises(InputError) as err:
        select_content(_selection_fixture(), [], GenerationConfig("car9"))
    assert (err.value.code, err.value.ident) == ("unknown_entity", "car9")


def test_select_nothing_to_say():
    personas = parse_personas({"personas": [_persona("p", {"comfort": 1.0})]})
    with pytest.raises(InputError) as err:
        select_content(_selection_fixture(), personas, GenerationConfig("car1"))
    assert err.value.code == "empty_selection"


@given(fact_bases(), persona_lists(min_size=1))
def test_selection_is_deterministic_subset(fb, personas):
    target = fb.entities[0].id
    cfg = GenerationConfig(target)
    try:
        sel = select_content(fb, personas, cfg)
    except InputError as err:
        assert err.code == "empty_selection"
        return
    assert len(set(sel.fact_ids)) == len(sel.fact_ids)
    assert all(fb.fact(f).entity == target for f in sel.fact_ids)
    assert select_content(fb, personas, cfg) == sel


def test_config_validation():
    with pytest.raises(InputError):
        GenerationConfig("car1", emphasis_threshold=1.2)
    with pytest.raises(InputError):
        GenerationConfig("car1", topic_priority=("a", "a"))
    with pytest.raises(InputError):
        GenerationConfig.from_dict({"target_entity": "car1", "emphasis": 0.3})
