"""Exact optimum for tiny instances: subset DP over bins, each bin decided by
weight sums plus an exhaustive normal-position placement search."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import InstanceTooLarge, NonGridInstance
from .feasibility import find_positions
from .model import BinPacking, Instance

ORACLE_CAP = 5


def check_grid(instance: Instance, K: int) -> None:
    for it in instance:
        for x in (it.width, it.height) + tuple(it.weights):
            q = Fraction(x) * K
            if q.denominator != 1:
                raise NonGridInstance(f"item {it.id!r}: {x} is not a multiple of 1/{K}")


def bin_feasible(items, d: int) -> Optional[dict]:
    """Positions for ``items`` in one bin, or None."""
    for j in range(d):
        if sum(it.weights[j] for it in items) > 1:
            return None
    return find_positions([(it.id, it.width, it.height) for it in items])


def brute_force_opt(instance: Instance, K: Optional[int] = None, cap: int = ORACLE_CAP):
    """Minimum bin count and a witness packing."""
    n = instance.n
    if n > cap:
        raise InstanceTooLarge(f"oracle cap is {cap} items, got {n}")
    if K is not None:
        check_grid(instance, K)
    items = list(instance)
    if n == 0:
        return 0, BinPacking([], 0)
    full = (1 << n) - 1
    fit = {}
    for mask in range(1, full + 1):
        fit[mask] = bin_feasible([items[i] for i in range(n) if mask >> i & 1], instance.d)
    best = {0: (0, ())}
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        choice = None
        sub = rest
        while True:
            b = sub | low
            if fit[b] is not None:
                cand = best[mask ^ b][0] + 1
                if choice is None or cand < choice[0]:
                    choice = (cand, best[mask ^ b][1] + (b,))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = choice
    count, masks = best[full]
    bins = []
    for b in masks:
        pos = fit[b]
        bins.append([(items[i].id, *pos[items[i].id]) for i in range(n) if b >> i & 1])
    return count, BinPacking.from_bins(bins)
