import random
import warnings
from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest
from scipy.optimize import linprog

from gvbp import (Instance, Item, enumerate_configurations, solve_config_lp_cg,
                  solve_config_lp_exact, span_stats, validate_packing)
from gvbp.errors import InstanceTooLarge
from gvbp.oracle import bin_feasible

from conftest import three_rects, four_items, random_instance


def scipy_lp(instance):
    """Covering LP over every feasible subset, solved by HiGHS."""
    items = list(instance)
    cols = [c for r in range(1, len(items) + 1) for c in combinations(range(len(items)), r)
            if bin_feasible([items[i] for i in c], instance.d) is not None]
    A = np.zeros((len(items), len(cols)))
    for k, c in enumerate(cols):
        A[list(c), k] = 1
    res = linprog(np.ones(len(cols)), A_ub=-A, b_ub=-np.ones(len(items)), method="highs")
    return res.fun


def check_solution(inst, sol):
    for cfg, x in sol.columns:
        assert x > 0
        assert validate_packing(inst.subset(cfg.item_ids), cfg.witness).ok
    tol = 0 if inst.exact else 1e-9
    for it in inst:
        assert sol.coverage(it.id) >= 1 - tol


def test_enumerate_examples():
    one = Instance(1, [Item("a", F(1, 2), F(1, 2), (F(1, 2),))])
    assert [c.item_ids for c in enumerate_configurations(one)] == [frozenset("a")]
    cfgs = enumerate_configurations(three_rects())
    assert frozenset("abc") in [c.item_ids for c in cfgs]
    heavy = Instance(1, [Item("a", 0, 0, (F(1),)), Item("b", 0, 0, (F(1),))])
    assert sorted(c.item_ids for c in enumerate_configurations(heavy)) == [frozenset("a"), frozenset("b")]
    with pytest.raises(InstanceTooLarge):
        enumerate_configurations(random_instance(random.Random(0), 12, 1), cap=10)


def test_enumerate_is_maximal_cover(rng):
    for _ in range(25):
        inst = random_instance(rng, rng.randint(1, 6), rng.randint(0, 2), exact=True, K=6)
        cfgs = [c.item_ids for c in enumerate_configurations(inst)]
        items = list(inst)
        for r in range(1, len(items) + 1):
            for sub in combinations(items, r):
                ids = frozenset(it.id for it in sub)
                if bin_feasible(list(sub), inst.d) is not None:
                    assert any(ids <= c for c in cfgs)
        for c in cfgs:
            assert not any(c < o for o in cfgs)


def test_exact_lp_examples():
    one = Instance(1, [Item("a", F(1, 2), F(1, 2), (F(1, 2),))])
    assert solve_config_lp_exact(one).objective == 1
    sol = solve_config_lp_exact(four_items())
    check_solution(four_items(), sol)
    assert span_stats(four_items()).span_total / 3 <= sol.objective <= 2
    assert float(sol.objective) == pytest.approx(scipy_lp(four_items()))
    k = Instance(1, [Item(str(i), 0, 0, (F(3, 5),)) for i in range(4)])
    assert solve_config_lp_exact(k).objective == 4


def test_exact_lp_matches_scipy(rng):
    for _ in range(25):
        inst = random_instance(rng, rng.randint(1, 6), rng.randint(0, 2), exact=True, K=6)
        sol = solve_config_lp_exact(inst)
        check_solution(inst, sol)
        assert sol.support <= inst.n
        assert float(sol.objective) == pytest.approx(scipy_lp(inst), abs=1e-7)


def test_cg_examples():
    one = Instance(1, [Item("a", F(1, 2), F(1, 2), (F(1, 2),))])
    sol = solve_config_lp_cg(one, pricing="exact")
    assert sol.objective == 1 and sol.iterations == 1 and sol.status == "certified"
    k = Instance(1, [Item(str(i), 0, 0, (F(3, 5),)) for i in range(5)])
    sol = solve_config_lp_cg(k, pricing="approx", eps=F(1, 10))
    assert 5 <= sol.objective <= F(11, 2)


@pytest.mark.parametrize("exact", [True, False])
def test_cg_exact_pricing_ratio(exact):
    rng = random.Random(21 + exact)
    for _ in range(20):
        inst = random_instance(rng, rng.randint(1, 6), rng.randint(1, 2), exact=exact, K=6)
        star = solve_config_lp_exact(inst).objective
        sol = solve_config_lp_cg(inst, pricing="exact", eps=0.1)
        check_solution(inst, sol)
        tol = 0 if exact else 1e-9
        assert sol.status == "certified"
        assert sol.objective <= (1 + sol.certificate["eps"]) * star + tol
        assert sol.lower_bound <= star + tol


def test_cg_certificate_and_sandwich(rng):
    for _ in range(15):
        inst = random_instance(rng, rng.randint(5, 25), rng.randint(1, 3))
        sol = solve_config_lp_cg(inst, pricing="approx", eps=0.1)
        check_solution(inst, sol)
        s = span_stats(inst).span_total
        assert s / (inst.d + 1) - 1e-9 <= sol.objective <= 6 * s + 3
        c = sol.certificate
        if sol.status == "certified":
            assert c["eta"] * c["best_column_value"] <= c["eta"] * (1 + c["eps"]) + 1e-9
            assert sol.objective <= (1 + c["eps"]) * c["eta"] * sol.lower_bound + 1e-9


def test_cg_iteration_cap_warns():
    inst = random_instance(random.Random(3), 12, 1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        sol = solve_config_lp_cg(inst, max_iter=1, seed_simple=False)
    assert sol.status == "iteration_cap"
    assert any("iteration cap" in str(w.message) for w in caught)
    check_solution(inst, sol)
