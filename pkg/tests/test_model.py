import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from gvbp import (BinPacking, Instance, Item, Placement, classify_item, instance_from_dict,
                  instance_to_dict, packing_from_dict, packing_to_dict, span,
                  span_lower_bound, span_stats, validate_packing)
from gvbp.errors import DuplicateItemId, InvalidItem, MediumItem

from conftest import three_rects, four_items, random_instance
from oracles import packing_ok


def test_span_examples():
    assert span(Item("a", F(1, 2), F(1, 2), (F(3, 10),))) == F(3, 10)
    assert span(Item("b", 0, 0, (0, 0))) == 0
    assert span(Item("c", 1, 1, (F(1, 5), F(9, 10)))) == 1
    assert span(Item("d", F(1, 2), F(1, 4), ())) == F(1, 8)


def test_span_lower_bound_examples():
    two = Instance(1, [Item(str(i), 1, 1, (0,)) for i in range(2)])
    five = Instance(1, [Item(str(i), 0, 0, (1,)) for i in range(5)])
    assert span_lower_bound(two) == 1
    assert span_lower_bound(five) == 3
    assert span_lower_bound(four_items()) == 1
    assert span_stats(four_items()).span_total == F(18, 10)


def test_zero_area_normalised():
    it = Item("z", F(1, 2), 0, (F(1, 3),))
    assert it.width == 0 and it.height == 0


def test_item_ranges_rejected():
    with pytest.raises(InvalidItem):
        Item("x", F(3, 2), F(1, 2), ())
    with pytest.raises(InvalidItem):
        Item("x", F(1, 2), F(1, 2), (F(-1, 10),))
    with pytest.raises(InvalidItem):
        Instance(2, [Item("x", 0, 0, (0,))])


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateItemId):
        Instance(0, [Item("a", 1, 1, ()), Item("a", F(1, 2), 1, ())])


def test_float_demotes_whole_instance():
    inst = Instance(1, [Item("a", F(1, 2), F(1, 2), (F(1, 3),)), Item("b", 0.5, 0.25, (0.1,))])
    assert not inst.exact
    assert all(isinstance(x, float) for it in inst for x in (it.width, it.height) + it.weights)


def test_classify_examples():
    e1, e2 = F(1, 5), F(1, 100)
    c = classify_item(Item("a", F(1, 2), F(1, 2), (F(1, 10),)), e1, e2)
    assert (c.shape, c.dense) == ("big", False)
    c = classify_item(Item("b", 0, 0, (F(3, 10),)), e1, e2)
    assert (c.shape, c.dense, c.heavy) == ("small", True, True)
    c = classify_item(Item("c", F(1, 2), F(5, 1000), (F(1, 5),)), e1, e2)
    assert (c.shape, c.dense, c.heavy) == ("wide", True, True)
    with pytest.raises(MediumItem):
        classify_item(Item("m", F(1, 10), F(1, 2), ()), e1, e2)


@given(st.fractions(0, 1), st.fractions(0, 1))
def test_classify_shapes_exclusive(w, h):
    e1, e2 = F(1, 5), F(1, 100)
    if e2 < w <= e1 or e2 < h <= e1:
        return
    it = Item("x", w, h, (F(1, 2),))
    w, h = it.width, it.height  # zero area collapses both sides
    c = classify_item(it, e1, e2)
    expect = {(True, True): "big", (True, False): "wide",
              (False, True): "tall", (False, False): "small"}[(w > e1, h > e1)]
    assert c.shape == expect
    assert not (c.shape == "big" and c.dense)


def test_validate_fig1():
    inst = three_rects()
    pk = BinPacking([Placement("a", 0, F(0), F(0)), Placement("b", 0, F(0), F(1, 5)),
                     Placement("c", 0, F(2, 5), F(1, 5))], 1)
    assert validate_packing(inst, pk).ok
    vec = Instance(1, [Item(i, 0, 0, (F(v),)) for i, v in (("a", "0.8"), ("b", "0.4"), ("c", "0.4"))])
    pk = BinPacking([Placement(i, 0, F(0), F(0)) for i in "abc"], 1)
    rep = validate_packing(vec, pk)
    assert not rep.ok and any(v.kind == "weight" for v in rep.violations)
    assert validate_packing(Instance(1, []), BinPacking([], 0)).ok


def test_validate_detects_each_failure():
    inst = Instance(1, [Item("a", F(1, 2), F(1, 2), (F(1, 2),)), Item("b", F(1, 2), F(1, 2), (F(1, 2),))])
    ok = BinPacking([Placement("a", 0, F(0), F(0)), Placement("b", 0, F(1, 2), F(0))], 1)
    assert validate_packing(inst, ok).ok
    overlap = BinPacking([Placement("a", 0, F(0), F(0)), Placement("b", 0, F(1, 4), F(0))], 1)
    assert "overlap" in {v.kind for v in validate_packing(inst, overlap).violations}
    outside = BinPacking([Placement("a", 0, F(3, 4), F(0)), Placement("b", 1, F(0), F(0))], 2)
    assert not validate_packing(inst, outside).ok
    missing = BinPacking([Placement("a", 0, F(0), F(0))], 1)
    assert not validate_packing(inst, missing).ok
    assert validate_packing(inst, missing, require_all_packed=False).ok
    dup = BinPacking([Placement("a", 0, F(0), F(0)), Placement("a", 1, F(0), F(0)),
                      Placement("b", 1, F(1, 2), F(0))], 2)
    assert not validate_packing(inst, dup).ok


def test_validator_matches_reference(rng):
    for trial in range(300):
        inst = random_instance(rng, rng.randint(1, 5), rng.randint(0, 2), exact=True, K=4)
        bins = rng.randint(1, 3)
        pl = [Placement(it.id, rng.randrange(bins), F(rng.randint(0, 4), 4), F(rng.randint(0, 4), 4))
              for it in inst if rng.random() < 0.95]
        pk = BinPacking(pl, bins)
        assert validate_packing(inst, pk).ok == packing_ok(inst, pk), trial


def test_validator_matches_reference_float(rng):
    for trial in range(200):
        inst = random_instance(rng, rng.randint(1, 6), 1, exact=False, zero_area=0.2)
        pl = [Placement(it.id, rng.randrange(2), rng.random() * (1 - it.width),
                        rng.random() * (1 - it.height)) for it in inst]
        pk = BinPacking(pl, 2)
        assert validate_packing(inst, pk).ok == packing_ok(inst, pk), trial


@given(st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
def test_span_monotone(w, h, v, bump):
    base = Item("x", w, h, (v,))
    assert span(base.replace(weights=(min(1, v + bump),))) >= span(base)
    if w * h > 0:
        assert span(base.replace(width=min(1, w + bump))) >= span(base)


def test_json_round_trip():
    inst = Instance(2, [Item("a", F(1, 3), F(1, 2), (F(1, 7), F(0)), F(2, 3)), Item("b", 0, 0, (F(1), F(1, 2)))])
    back = instance_from_dict(json.loads(json.dumps(instance_to_dict(inst))))
    assert back == inst
    pk = BinPacking([Placement("a", 0, F(1, 3), F(0)), Placement("b", 1, F(0), F(0))], 2)
    assert packing_from_dict(json.loads(json.dumps(packing_to_dict(pk)))).placements == pk.placements
    parsed = instance_from_dict({"d": 1, "items": [{"id": 1, "w": "0.1", "h": 0.5, "v": ["0.3"]}]})
    assert not parsed.exact  # one float anywhere demotes the instance


def test_decimal_strings_are_exact():
    parsed = instance_from_dict({"d": 1, "items": [{"id": "q", "w": "0.1", "h": "1/3", "v": ["0.3"]}]})
    assert parsed.exact and parsed.item("q").width == F(1, 10) and parsed.item("q").height == F(1, 3)
