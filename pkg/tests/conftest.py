import random
from fractions import Fraction as F

import pytest
from hypothesis import settings

from gvbp import Instance, Item

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def three_rects(d=0):
    """Three rectangles that share one bin geometrically."""
    sizes = [("a", "0.8", "0.2"), ("b", "0.4", "0.4"), ("c", "0.4", "0.4")]
    return Instance(d, [Item(i, F(w), F(h), (F(0),) * d) for i, w, h in sizes])


def four_items():
    rows = [("1", "0.4", "1", "0.2", "0.4"), ("2", "0.4", "1", "0.6", "0.2"),
            ("3", "0.5", "0.3", "0.5", "0.2"), ("4", "0.5", "0.4", "0.3", "0.2")]
    return Instance(2, [Item(i, F(w), F(h), (F(a), F(b))) for i, w, h, a, b in rows])


def random_instance(rng: random.Random, n, d, exact=False, K=20, zero_area=0.1):
    items = []
    for i in range(n):
        if exact:
            w, h = F(rng.randint(0, K), K), F(rng.randint(0, K), K)
            v = tuple(F(rng.randint(0, K), K) for _ in range(d))
        else:
            w, h = rng.random(), rng.random()
            v = tuple(rng.random() ** 2 for _ in range(d))
        if rng.random() < zero_area:
            w = h = w * 0
        items.append(Item(f"i{i}", w, h, v))
    return Instance(d, items)


@pytest.fixture
def rng():
    return random.Random(12345)
