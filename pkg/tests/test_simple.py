import math
import random
from fractions import Fraction as F

from gvbp import (Instance, Item, better_simple_pack, simple_pack, span_stats, validate_packing)
from gvbp.oracle import brute_force_opt

from conftest import random_instance


def test_simple_pack_examples():
    assert simple_pack(Instance(1, [])).bin_count == 0
    four = Instance(1, [Item(str(i), F(1, 2), F(1, 2), (F(1, 2),)) for i in range(4)])
    pk = simple_pack(four)
    assert validate_packing(four, pk).ok
    assert pk.bin_count <= 6 <= 3 * math.ceil(2 * span_stats(four).span_total)


def test_simple_pack_bound_random():
    rng = random.Random(1)
    for _ in range(150):
        inst = random_instance(rng, rng.randint(0, 30), rng.randint(0, 3), exact=rng.random() < 0.3)
        pk = simple_pack(inst)
        assert validate_packing(inst, pk).ok
        assert pk.bin_count <= 3 * math.ceil(2 * span_stats(inst).span_total)


def test_simple_pack_ratio_vs_opt():
    rng = random.Random(9)
    for _ in range(40):
        d = rng.randint(0, 2)
        inst = random_instance(rng, rng.randint(1, 4), d, exact=True, K=4)
        opt, _ = brute_force_opt(inst, 4)
        assert simple_pack(inst).bin_count <= 6 * (d + 1) * opt


def test_better_simple_pack():
    assert better_simple_pack(Instance(2, [])).bin_count == 0
    one = Instance(2, [Item("a", F(1, 3), F(1, 3), (F(1, 2), F(1, 4)))])
    assert better_simple_pack(one).bin_count == 1
    rng = random.Random(4)
    for _ in range(20):
        inst = random_instance(rng, 20, 2)
        assert validate_packing(inst, better_simple_pack(inst)).ok


def test_better_simple_pack_custom_heuristic():
    def one_per_bin(vectors):
        return [[i] for i in range(len(vectors))]
    inst = random_instance(random.Random(0), 6, 1)
    assert better_simple_pack(inst, one_per_bin).bin_count == 6
