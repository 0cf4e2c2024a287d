"""Seeded random instances: uniform floats, or exact grid instances for the oracle."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .model import Instance, Item


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    d: int = 1
    seed: int = 0
    grid: Optional[int] = None        # K: all sides and weights multiples of 1/K (exact)
    width: tuple = (0.0, 1.0)
    height: tuple = (0.0, 1.0)
    weight: tuple = (0.0, 1.0)
    dense_fraction: float = 0.0       # share of zero-area items (dense under any schedule)
    profits: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        data = dict(data)
        for key in ("width", "height", "weight"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)


def _draw(rng, lo, hi, K):
    if K is None:
        return float(rng.uniform(lo, hi))
    a, b = int(np.ceil(lo * K)), int(np.floor(hi * K))
    return Fraction(int(rng.integers(a, b + 1)), K)


def generate_instance(spec: GeneratorSpec) -> Instance:
    rng = np.random.default_rng(spec.seed)
    K = spec.grid
    items = []
    for i in range(spec.n):
        dense = rng.random() < spec.dense_fraction
        w = _draw(rng, *spec.width, K)
        h = _draw(rng, *spec.height, K)
        if dense:
            w = h = w * 0
        v = tuple(_draw(rng, *spec.weight, K) for _ in range(spec.d))
        p = _draw(rng, 0.0, 1.0, K) if spec.profits else None
        items.append(Item(f"i{i}", w, h, v, p))
    return Instance(spec.d, tuple(items))
