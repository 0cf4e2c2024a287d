"""The configuration LP: exact solves over enumerated configurations and
column generation with a knapsack pricing oracle.

Both solve the dual packing LP  max sum(y)  s.t.  sum_{i in C} y_i <= 1  for
every configuration C in the pool; the covering solution x is read off the
dual prices of the optimal tableau.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ._num import TAU
from .errors import InstanceTooLarge
from .feasibility import find_positions
from .geometry import Rect, nfdh_strip, steinberg_condition, steinberg_pack
from .knapsack import EXACT_CAP, knapsack_bins
from .model import BinPacking, Instance, Placement, span, span_stats
from .simple import simple_pack
from .simplex import simplex_max

ENUM_CAP = 10


@dataclass(frozen=True)
class Configuration:
    item_ids: frozenset
    witness: BinPacking = field(compare=False, hash=False, repr=False)


@dataclass
class SparseLpSolution:
    columns: list  # (Configuration, coefficient > 0)
    objective: object
    lower_bound: object = None
    status: str = "optimal"
    iterations: int = 0
    certificate: dict = field(default_factory=dict)
    duals: dict = field(default_factory=dict)

    @property
    def support(self) -> int:
        return len(self.columns)

    def coverage(self, item_id):
        return sum((c for cfg, c in self.columns if item_id in cfg.item_ids), 0)


def single_bin_witness(items, exhaustive: bool = True, d: Optional[int] = None):
    """A one-bin packing of ``items`` or None.

    Weight sums and area are checked first, then the guaranteed Steinberg
    case, then NFDH, then (if ``exhaustive``) a complete position search.
    With ``exhaustive=False`` a None answer only means "not found".
    """
    items = list(items)
    if not items:
        return BinPacking([], 0)
    vals = [it.width for it in items]
    tol = 0 if all(isinstance(v, Fraction) for v in vals) else TAU
    one = Fraction(1) if tol == 0 else 1.0
    d = len(items[0].weights) if d is None else d
    for j in range(d):
        if sum(it.weights[j] for it in items) > 1 + tol:
            return None
    if sum(it.area for it in items) > 1 + tol:
        return None
    rects = [Rect(it.id, it.width, it.height) for it in items]
    if steinberg_condition(rects, one, one):
        return steinberg_pack(rects, one, one)
    sp = nfdh_strip(rects, one)
    if sp.used_height <= 1 + tol:
        return BinPacking([Placement(i, 0, x, y) for i, x, y in sp.placements], 1)
    if not exhaustive:
        return None
    pos = find_positions([(it.id, it.width, it.height) for it in items], one, one)
    if pos is None:
        return None
    return BinPacking([Placement(it.id, 0, *pos[it.id]) for it in items], 1)


def enumerate_configurations(instance: Instance, cap: int = ENUM_CAP) -> list:
    """All inclusion-maximal configurations, each with a witness packing."""
    n = instance.n
    if n > cap:
        raise InstanceTooLarge(f"{n} items exceed the enumeration cap {cap}")
    items = list(instance)
    feasible = {0: BinPacking([], 0)}
    level = [0]
    while level:
        nxt = {}
        for S in level:
            top = S.bit_length()
            for j in range(top, n):
                T = S | (1 << j)
                if T in nxt:
                    continue
                # downward closure: every subset one smaller must already be feasible
                if any((T & ~(1 << k)) not in feasible for k in range(n) if T >> k & 1):
                    continue
                wit = single_bin_witness([items[k] for k in range(n) if T >> k & 1], d=instance.d)
                if wit is not None:
                    nxt[T] = wit
        feasible.update(nxt)
        level = list(nxt)
    out = []
    for S, wit in feasible.items():
        if S == 0:
            continue
        if any(S | (1 << j) in feasible for j in range(n) if not S >> j & 1):
            continue
        ids = frozenset(items[k].id for k in range(n) if S >> k & 1)
        out.append(Configuration(ids, wit))
    out.sort(key=lambda c: sorted(instance.items.index(instance.item(i)) for i in c.item_ids))
    return out


def _singleton(it) -> Configuration:
    z = it.width * 0
    return Configuration(frozenset([it.id]), BinPacking([Placement(it.id, 0, z, z)], 1))


def _solve_pool(instance: Instance, pool: list):
    ids = [it.id for it in instance]
    G = [[1 if i in cfg.item_ids else 0 for i in ids] for cfg in pool]
    res = simplex_max(G, [1] * len(pool), [1] * len(ids), instance.exact)
    cols = [(cfg, x) for cfg, x in zip(pool, res.x) if x > 0]
    duals = dict(zip(ids, res.y))
    return cols, res.value, duals


def solve_config_lp_exact(instance: Instance, cap: int = ENUM_CAP) -> SparseLpSolution:
    if instance.n == 0:
        return SparseLpSolution([], instance.zero(), instance.zero())
    pool = enumerate_configurations(instance, cap)
    cols, val, duals = _solve_pool(instance, pool)
    assert len(cols) <= instance.n, "extreme point with support above n"
    return SparseLpSolution(cols, val, val, "optimal", 1, {"method": "enumeration"}, duals)


def solve_config_lp_cg(instance: Instance, pricing: str = "approx", eps=0.1,
                       max_iter: Optional[int] = None, seed_simple: bool = True,
                       enum_cap: int = ENUM_CAP) -> SparseLpSolution:
    """Column generation with a certified stopping rule.

    ``pricing="exact"`` maximises the dual value over all configurations
    (ratio 1, needs ``n <= enum_cap``); ``pricing="approx"`` uses the
    one-bin knapsack (ratio 3) and adds every bin it produces as a column.
    The loop stops once the best column found is worth at most ``1 + eps``;
    then ``objective <= (1 + eps) * ratio * LP*`` and ``lower_bound`` is a
    proven lower bound on LP*.  Hitting ``max_iter`` (default ``50 n``)
    returns the current feasible solution with ``status="iteration_cap"``.
    """
    if pricing not in ("exact", "approx"):
        raise ValueError(f"unknown pricing {pricing!r}")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    n = instance.n
    if n == 0:
        return SparseLpSolution([], instance.zero(), instance.zero())
    eps = Fraction(eps).limit_denominator(10 ** 6) if instance.exact else float(eps)
    eta = 1 if pricing == "exact" else 3
    max_iter = 50 * n if max_iter is None else max_iter
    all_cfgs = enumerate_configurations(instance, enum_cap) if pricing == "exact" else None

    pool, seen = [], set()

    def add(cfg):
        if cfg.item_ids and cfg.item_ids not in seen:
            seen.add(cfg.item_ids)
            pool.append(cfg)
            return True
        return False

    for it in instance:
        add(_singleton(it))
    if seed_simple:
        # the simple packer's bins bound the objective by 6 Span + 3 from the start
        for b in simple_pack(instance).bins():
            add(Configuration(frozenset(p.item_id for p in b),
                              BinPacking([Placement(p.item_id, 0, p.x, p.y) for p in b], 1)))

    status = "iteration_cap"
    heuristic = False  # greedy pricing was needed somewhere: no ratio certificate
    it_count = 0
    v = None
    while it_count < max_iter:
        it_count += 1
        cols, z, y = _solve_pool(instance, pool)
        if pricing == "exact":
            vals = [sum((y[i] for i in c.item_ids), 0 * z) for c in all_cfgs]
            k = max(range(len(vals)), key=lambda t: vals[t])
            v, new = vals[k], [all_cfgs[k]]
        else:
            profits = [y[it.id] for it in instance]
            live = sum(1 for it, p in zip(instance, profits)
                       if p > 0 and (it.area > 0 or any(x > 0 for x in it.weights)))
            if live > EXACT_CAP:
                heuristic = True
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                bins, prof = knapsack_bins(instance, profits, "approx")
            new = [Configuration(frozenset(i for i, _, _ in b),
                                 BinPacking([Placement(i, 0, x, yy) for i, x, yy in b], 1))
                   for b in bins]
            v = max(prof, default=0 * z)
        if v <= 1 + eps:
            status = "certified"
            break
        if not any([add(c) for c in new]):
            status = "stalled"  # float round-off: best column already pooled
            break
    else:
        cols, z, y = _solve_pool(instance, pool)
        warnings.warn("column generation hit its iteration cap", RuntimeWarning, stacklevel=2)

    vv = v if v is not None and v > 0 else 1
    lb = min(z, z / (eta * vv))
    if heuristic:
        if status == "certified":
            status = "heuristic"
        lb = span_stats(instance).span_total / (instance.d + 1)
        if not instance.exact:
            lb = float(lb)
    cert = {"pricing": pricing, "eta": eta, "eps": eps, "best_column_value": v,
            "lower_bound": lb, "ratio": eta * vv}
    if status == "certified":
        # objective / lower_bound = eta * v <= (1 + eps) * eta
        tol = 0 if instance.exact else TAU
        assert z <= (1 + eps) * eta * lb + tol * max(1, z)
    return SparseLpSolution(cols, z, lb, status, it_count, cert, y)
