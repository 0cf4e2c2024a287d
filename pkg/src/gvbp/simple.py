"""Span-based packers: Next-Fit on Span with a three-bin geometric split, and
the vectorize-then-split variant driven by a vector bin packing heuristic."""
from __future__ import annotations

from typing import Callable, Sequence

from ._num import TAU, is_exact
from .geometry import Rect, next_fit_1d, steinberg_three_bins
from .model import BinPacking, Instance, Item, span


def split_group(items: Sequence[Item]) -> BinPacking:
    """Items with area <= 1 and weight sums <= 1 into at most three bins."""
    return steinberg_three_bins([Rect(it.id, it.width, it.height) for it in items])


def simple_pack(instance: Instance) -> BinPacking:
    """Next-Fit on item Spans, each group split into <= 3 bins.

    Uses at most ``3 * ceil(2 * Span(I))`` bins.
    """
    items = list(instance)
    groups = next_fit_1d([span(it) for it in items])
    return BinPacking.concat(split_group([items[i] for i in g]) for g in groups)


def first_fit_decreasing(vectors: Sequence[Sequence], tol=None) -> list:
    """Vector bin packing: largest coordinate first, each into the first bin it fits."""
    if tol is None:
        tol = 0 if is_exact(x for v in vectors for x in v) else TAU
    order = sorted(range(len(vectors)), key=lambda i: -max(vectors[i], default=0))
    bins, loads = [], []
    for i in order:
        v = vectors[i]
        for b, load in enumerate(loads):
            if all(load[j] + v[j] <= 1 + tol for j in range(len(v))):
                bins[b].append(i)
                loads[b] = [load[j] + v[j] for j in range(len(v))]
                break
        else:
            bins.append([i])
            loads.append(list(v))
    return bins


def better_simple_pack(instance: Instance,
                       vbp_heuristic: Callable[[list], list] = first_fit_decreasing) -> BinPacking:
    """Vectorize (area first), pack vectors with ``vbp_heuristic``, split each vector bin."""
    items = list(instance)
    vectors = [(it.area,) + tuple(it.weights) for it in items]
    groups = vbp_heuristic(vectors)
    return BinPacking.concat(split_group([items[i] for i in g]) for g in groups)
