"""Vector knapsack engine and the single-bin (2, d) knapsack built on it."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from . import _kernels
from ._num import TAU, is_exact
from .errors import InstanceTooLarge, PreconditionViolated
from .geometry import Rect, steinberg_three_bins
from .model import BinPacking, Instance, Placement

EXACT_CAP = 40


@dataclass(frozen=True)
class VectorKnapsackProblem:
    vectors: tuple
    profits: tuple

    def __post_init__(self):
        vecs = tuple(tuple(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "profits", tuple(self.profits))
        if len(vecs) != len(self.profits):
            raise ValueError("vectors and profits differ in length")
        dims = {len(v) for v in vecs}
        if len(dims) > 1:
            raise ValueError("vectors differ in dimension")
        for v in vecs:
            if any(not 0 <= x <= 1 for x in v):
                raise ValueError("vector coordinates must lie in [0, 1]")
        if any(p < 0 for p in self.profits):
            raise ValueError("profits must be nonnegative")

    @property
    def dims(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    @property
    def n(self) -> int:
        return len(self.vectors)

    def profit_of(self, subset) -> object:
        return sum((self.profits[i] for i in subset), 0)

    def feasible(self, subset, tol=None) -> bool:
        if tol is None:
            tol = 0 if is_exact(x for v in self.vectors for x in v) else TAU
        return all(sum((self.vectors[i][j] for i in subset), 0) <= 1 + tol
                   for j in range(self.dims))


def _greedy(problem: VectorKnapsackProblem, order, tol) -> list:
    load = [0] * problem.dims
    take = []
    for i in order:
        v = problem.vectors[i]
        if all(load[j] + v[j] <= 1 + tol for j in range(problem.dims)):
            take.append(i)
            load = [load[j] + v[j] for j in range(problem.dims)]
    return take


def vector_knapsack(problem: VectorKnapsackProblem, mode: str = "exact",
                    eps=None, cap: int = EXACT_CAP) -> list:
    """Sorted indices of a feasible subset.

    ``exact`` returns a maximum-profit subset (branch-and-bound, at most
    ``cap`` items with positive profit and nonzero vector).  ``approx``
    returns the exact answer when it is within the cap, which meets any
    ``1/(1+eps)`` ratio, and otherwise a profit-density greedy whose ratio is
    not bounded; the latter is announced with a ``RuntimeWarning``.
    """
    if mode not in ("exact", "approx"):
        raise ValueError(f"unknown mode {mode!r}")
    vals = [x for v in problem.vectors for x in v] + list(problem.profits)
    tol = 0 if is_exact(vals) else TAU
    free = [i for i in range(problem.n)
            if problem.profits[i] > 0 and all(x == 0 for x in problem.vectors[i])]
    rest = [i for i in range(problem.n)
            if problem.profits[i] > 0 and any(x > 0 for x in problem.vectors[i])]
    if len(rest) > cap:
        if mode == "exact":
            raise InstanceTooLarge(f"{len(rest)} candidate items exceed the exact cap {cap}")
        warnings.warn("vector knapsack above the exact cap: greedy fallback, ratio unbounded",
                      RuntimeWarning, stacklevel=2)

        def density(i):
            s = sum(problem.vectors[i])
            return -(problem.profits[i] / s)
        return sorted(free + _greedy(problem, sorted(rest, key=density), tol))
    if not rest:
        return sorted(free)
    mask, _, complete = _kernels.knapsack_bb([problem.vectors[i] for i in rest],
                                             [problem.profits[i] for i in rest], tol)
    if not complete:  # pragma: no cover - node limit is far above the cap's needs
        raise InstanceTooLarge("branch-and-bound node limit reached")
    return sorted(free + [rest[k] for k in range(len(rest)) if mask[k]])


def vectorize(instance: Instance, profits: Optional[Sequence] = None) -> VectorKnapsackProblem:
    """Area as dimension 0 followed by the d weights."""
    if profits is None:
        if any(it.profit is None for it in instance):
            raise PreconditionViolated("every item needs a profit")
        profits = [it.profit for it in instance]
    return VectorKnapsackProblem(tuple((it.area,) + tuple(it.weights) for it in instance),
                                 tuple(profits))


def knapsack_bins(instance: Instance, profits: Optional[Sequence] = None,
                  mode: str = "exact", eps=None) -> tuple:
    """Solve the vectorized problem and split the winner into at most 3 bins.

    Returns ``(bins, profits)`` where ``bins`` lists ``(id, x, y)`` per bin.
    """
    prob = vectorize(instance, profits)
    chosen = vector_knapsack(prob, mode, eps)
    items = [instance.items[i] for i in chosen]
    prof = {instance.items[i].id: prob.profits[i] for i in chosen}
    pk = steinberg_three_bins([Rect(it.id, it.width, it.height) for it in items])
    bins = [[(p.item_id, p.x, p.y) for p in b] for b in pk.bins()]
    return bins, [sum((prof[i] for i, _, _ in b), 0) for b in bins]


def gvbp_knapsack(instance: Instance, mode: str = "exact", eps=None,
                  profits: Optional[Sequence] = None) -> tuple:
    """Most profitable single bin: ``(item ids, BinPacking)``.

    With an ``alpha``-approximate vector knapsack the profit is at least
    ``opt / (3 alpha)``.  Equal-profit bins resolve to the lowest index.
    """
    bins, prof = knapsack_bins(instance, profits, mode, eps)
    if not bins:
        return [], BinPacking([], 0)
    best = max(range(len(bins)), key=lambda k: (prof[k], -k))
    b = bins[best]
    return [i for i, _, _ in b], BinPacking([Placement(i, 0, x, y) for i, x, y in b], 1)
