"""Rounding toolkit: medium-item removal, weight rounding with its undo-log,
coarse partitioning, slack checks and splitting, the dense box, linear
grouping, and the round / complex_pack / unround plug-ins for R&A.

Everything here runs on exact rationals; float inputs are converted exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import MediumItem, MixedPartition, PreconditionViolated, SlacknessViolated
from .geometry import Rect, nfdh_strip, steinberg_three_bins
from .model import (BinPacking, Instance, Item, ItemClass, Placement, classify_item, span,
                    span_total)

F = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def exact_item(it: Item) -> Item:
    return Item(it.id, _q(it.width), _q(it.height), tuple(_q(v) for v in it.weights),
                None if it.profit is None else _q(it.profit))


def exact_instance(instance: Instance) -> Instance:
    if instance.exact:
        return instance
    return Instance(instance.d, tuple(exact_item(it) for it in instance))


def _ceil_div(x: Fraction, q: Fraction) -> int:
    return -((-x.numerator * q.denominator) // (x.denominator * q.numerator))


# ---- schedule -------------------------------------------------------------------

def check_eps(eps, strict: bool = True) -> Fraction:
    eps = _q(eps)
    if eps <= 0 or eps > 1 or eps.numerator != 1:
        raise ValueError("eps must be 1/k for a positive integer k")
    if strict and (eps > F(1, 8) or eps.denominator % 2):
        raise ValueError("eps must be 1/k with k even and k >= 8")
    return eps


def delta0(d: int, eps) -> Fraction:
    eps = _q(eps)
    return min(F(1, 4 * d + 1), 2 * eps / 3)


def n_light_classes(d: int, eps) -> int:
    if d <= 1:
        return 1
    eps = float(eps)
    return math.ceil((8 + eps) / eps * math.log(8 * d / eps)) ** (d - 1)


def f_next(x: Fraction, d: int, eps) -> Fraction:
    """Next (much smaller) threshold; always the reciprocal of an integer."""
    eps = _q(eps)
    x5 = x ** 5
    m = max(F(n_light_classes(d, eps)) / eps,
            (16 + d ** 3) / (eps * x5),
            (128 + x ** 3 * ((8 / (x * x * eps)) ** d + 2 * d)) / (eps * x5))
    return F(1, math.ceil(m))


@dataclass(frozen=True)
class EpsilonSchedule:
    eps: Fraction
    d: int
    eps1: Fraction
    eps2: Fraction
    delta0: Fraction = None
    index: int = 0          # r, the chosen window
    windows: tuple = ()     # Span of each window evaluated

    @classmethod
    def custom(cls, eps, d: int, eps1, eps2) -> "EpsilonSchedule":
        """A schedule with hand-picked thresholds, for experiments and tests.

        Requires 1/eps1, 1/eps2 integers, eps1 <= delta0 and
        eps2 <= eps * eps1^2 / 2, the conditions the rounding guarantees rely on.
        """
        eps, eps1, eps2 = check_eps(eps), _q(eps1), _q(eps2)
        if eps1.numerator != 1 or eps2.numerator != 1:
            raise ValueError("eps1 and eps2 must be reciprocals of integers")
        if eps1 > delta0(d, eps):
            raise ValueError("eps1 exceeds delta0")
        if eps2 > eps * eps1 ** 2 / 2:
            raise ValueError("eps2 too large for eps1")
        return cls(eps, d, eps1, eps2, delta0(d, eps))

    @classmethod
    def canonical(cls, d: int, eps=F(1, 8)) -> "EpsilonSchedule":
        """The first window of the threshold chain: eps1 = delta0, eps2 = f(delta0)."""
        eps = check_eps(eps)
        e1 = delta0(d, eps)
        return cls(eps, d, e1, f_next(e1, d, eps), e1, 1)

    @property
    def delta_d(self):
        return 2 * self.d * self.eps1 ** 2 + self.eps2

    @property
    def delta_lg(self):
        return self.eps * self.eps1 / (self.d + 1)

    @property
    def grid(self):
        return self.eps1 ** 2 / 4

    @property
    def n_bwc(self):
        return (8 / (self.eps1 ** 2 * self.eps)) ** self.d

    @property
    def n_wwc(self):
        return (8 / (self.eps1 ** 3 * self.eps)) ** self.d

    @property
    def n_swc(self):
        return self.n_bwc

    @property
    def n_hwc(self):
        return (8 / self.eps * (1 / self.eps1 - 1)) ** self.d

    @property
    def n_lwc(self):
        return n_light_classes(self.d, self.eps)

    def ceilings(self) -> dict:
        return {"B": self.n_bwc, "W": self.n_wwc, "H": self.n_wwc, "S": self.n_swc,
                "Dl1": self.n_lwc, "Dl2": self.n_lwc, "Dh1": self.n_hwc, "Dh2": self.n_hwc,
                "Z": 1}


# ---- medium items ---------------------------------------------------------------

def _dims(it: Item):
    yield it.width
    yield it.height
    yield from it.weights


def in_window(it: Item, lo, hi) -> bool:
    return any(lo < x <= hi for x in _dims(it))


def rem_med(instance: Instance, eps, strict: bool = False):
    """Remove the cheapest window of medium items.

    Returns ``(medium ids, eps2, eps1, schedule)``.  Thresholds shrink so
    fast that they are produced lazily: the scan stops at the first window of
    Span 0, which is necessarily the first minimiser.
    """
    inst = exact_instance(instance)
    eps = check_eps(eps, strict)
    d = inst.d
    T = math.ceil(F(d + 2) / eps)
    prev = delta0(d, eps)
    best = None
    spans = []
    for t in range(1, T + 1):
        cur = f_next(prev, d, eps)
        members = [it for it in inst if in_window(it, cur, prev)]
        s = span_total(members)
        spans.append(s)
        if best is None or s < best[0]:
            best = (s, t, cur, prev, members)
        if s == 0:
            break
        prev = cur
    _, r, e2, e1, members = best
    sched = EpsilonSchedule(eps, d, e1, e2, delta0(d, eps), r, tuple(spans))
    return [it.id for it in members], e2, e1, sched


# ---- weight rounding -----------------------------------------------------------

def _round_up_multiple(v: Fraction, q: Fraction, positive: bool) -> Fraction:
    k = _ceil_div(v, q)
    if positive:
        k = max(k, 1)
    return k * q


def round_nondense(it: Item, cls: ItemClass, s: EpsilonSchedule) -> Item:
    """Non-dense weights up to a positive multiple of a shape-dependent quantum."""
    if cls.dense:
        return it
    q = {"big": s.eps1 ** 2 * s.eps / 8,
         "wide": it.height * s.eps1 * s.eps / 8,
         "tall": it.width * s.eps1 * s.eps / 8,
         "small": it.area * s.eps / 8}[cls.shape]
    return it.replace(weights=tuple(_round_up_multiple(v, q, True) for v in it.weights))


def round_to_zero(it: Item, cls: ItemClass, s: EpsilonSchedule) -> Item:
    """Dense items lose their geometry and their negligible weights."""
    if not cls.dense:
        return it
    vmax = it.vmax
    cut = s.eps / (8 * s.d) * vmax if s.d else 0
    return it.replace(width=F(0), height=F(0),
                      weights=tuple(F(0) if v <= cut else v for v in it.weights))


def round_heavy(it: Item, cls: ItemClass, s: EpsilonSchedule) -> Item:
    if not cls.dense:
        return it
    q = s.eps1 * s.eps / 8
    return it.replace(weights=tuple(_round_up_multiple(v, q, False) if v > s.eps1 else v
                                    for v in it.weights))


def _round_up_power(r: Fraction, base: Fraction) -> Fraction:
    """Smallest base**(-t), t >= 0 integer, that is >= r (0 < r <= 1)."""
    t = max(int(math.floor(-math.log(r) / math.log(base))) - 1, 0)
    while r * base ** (t + 1) <= 1:
        t += 1
    while t > 0 and r * base ** t > 1:
        t -= 1
    return 1 / base ** t


def round_light(it: Item, cls: ItemClass, s: EpsilonSchedule) -> Item:
    if not cls.dense:
        return it
    vmax = it.vmax
    if vmax == 0 or vmax > s.eps2:
        return it
    base = 1 + s.eps / 8
    return it.replace(weights=tuple(_round_up_power(v / vmax, base) * vmax if v > 0 else v
                                    for v in it.weights))


TRANSFORMATIONS = (round_nondense, round_to_zero, round_heavy, round_light)


@dataclass
class WeightRounding:
    instance: Instance        # rounded items, same ids
    classes: dict             # id -> ItemClass of the original item
    undo: dict                # id -> original Item
    schedule: EpsilonSchedule


def check_non_medium(instance: Instance, s: EpsilonSchedule) -> None:
    for it in instance:
        if in_window(it, s.eps2, s.eps1):
            raise MediumItem(f"item {it.id!r} has a side or weight in ({s.eps2}, {s.eps1}]")


def classify_all(instance: Instance, s: EpsilonSchedule) -> dict:
    check_non_medium(instance, s)
    return {it.id: classify_item(it, s.eps1, s.eps2) for it in instance}


def weight_round(instance: Instance, schedule: EpsilonSchedule,
                 classes: Optional[dict] = None) -> WeightRounding:
    """Apply the four weight transformations, in order, until nothing changes.

    ``classes`` pins the class of every item; pass the labels of a previous
    rounding when re-applying (rounded items may look dense by the raw ratio
    test, but keep the class they were rounded under).
    """
    inst = exact_instance(instance)
    if classes is None:
        classes = classify_all(inst, schedule)
    out = []
    for it in inst:
        cls = classes[it.id]
        cur = it
        for _ in range(4):
            nxt = cur
            for tr in TRANSFORMATIONS:
                nxt = tr(nxt, cls, schedule)
            if nxt == cur:
                break
            cur = nxt
        else:  # pragma: no cover
            raise RuntimeError(f"weight rounding of {it.id!r} did not settle")
        out.append(cur)
    return WeightRounding(Instance(inst.d, tuple(out)), dict(classes),
                          {it.id: it for it in inst}, schedule)


# ---- partitions -----------------------------------------------------------------

def _group(cls: ItemClass, it: Item) -> str:
    if cls.dense and it.vmax == 0:
        return "Z"  # no area, no weight: Span 0, fits anywhere
    if not cls.dense:
        return {"big": "B", "wide": "W", "tall": "H", "small": "S"}[cls.shape]
    kind = "Dh" if cls.heavy else "Dl"
    return kind + ("2" if cls.shape == "wide" else "1")


def weight_class_key(it: Item, cls: ItemClass) -> tuple:
    g = _group(cls, it)
    v = it.weights
    if g == "B" or g.startswith("Dh"):
        sig = v
    elif g == "W":
        sig = tuple(x / it.height for x in v)
    elif g == "H":
        sig = tuple(x / it.width for x in v)
    elif g == "S":
        sig = tuple(x / it.area for x in v)
    else:
        m = it.vmax
        sig = tuple(x / m for x in v) if m else v
    return (g, tuple(sig))


def coarse_partition(instance: Instance, schedule: EpsilonSchedule,
                     classes: Optional[dict] = None) -> dict:
    """Weight class -> item ids, dense classes split by wide vs tall/small."""
    inst = exact_instance(instance)
    if classes is None:
        classes = classify_all(inst, schedule)
    parts: dict = {}
    for it in inst:
        parts.setdefault(weight_class_key(it, classes[it.id]), []).append(it.id)
    return parts


def class_counts(partition: dict) -> dict:
    counts = {g: 0 for g in ("B", "W", "H", "S", "Dl1", "Dl2", "Dh1", "Dh2", "Z")}
    for g, _ in partition:
        counts[g] += 1
    return counts


def homogeneous_classes(rounding: WeightRounding) -> dict:
    """Coarse classes refined by the sides that may not be sliced, so all
    members share one density vector."""
    out: dict = {}
    for key, ids in coarse_partition(rounding.instance, rounding.schedule,
                                     rounding.classes).items():
        for i in ids:
            it = rounding.instance.item(i)
            g = key[0]
            geo = {"B": (it.width, it.height), "W": (it.width,), "H": (it.height,)}.get(g, ())
            out.setdefault(key + (geo,), []).append(i)
    return out


def density_vector(it: Item) -> tuple:
    if it.area > 0:
        return tuple(v / it.area for v in it.weights)
    m = it.vmax
    return tuple(v / m for v in it.weights) if m else tuple(it.weights)


# ---- slack ----------------------------------------------------------------------

def _zero_area(it: Item) -> bool:
    return it.area == 0


def check_slack(items: Sequence[Item], mu, dense: Callable[[Item], bool] = _zero_area) -> bool:
    """True iff the bin is mu-slacked.

    ``dense`` decides which items count as dense; the default (zero area)
    matches weight-rounded items.
    """
    items = list(items)
    if len(items) == 1:
        return True
    d = len(items[0].weights) if items else 0
    if all(sum(it.weights[j] for it in items) <= 1 - mu for j in range(d)):
        return True
    return (len(items) == 2 and all(dense(it) for it in items)
            and all(it.vmax <= F(1, 2) for it in items))


def split_slack(items: Sequence[Item], dims: Iterable[int], delta,
                caps: Optional[dict] = None) -> list:
    """Partition into at most |dims|+1 parts, each a singleton or with
    v_j <= (1 - delta) V_j on every listed dimension."""
    items = list(items)
    dims = sorted(set(dims))
    delta = _q(delta)
    if delta > F(1, 4):
        raise ValueError("delta must be at most 1/4")
    caps = {j: _q((caps or {}).get(j, 1)) for j in dims}
    for j in dims:
        if sum((_q(it.weights[j]) for it in items), F(0)) > caps[j]:
            raise PreconditionViolated(f"dimension {j} exceeds its cap")
    if not dims:
        return [items] if items else []
    large = [it for it in items if any(it.weights[j] > (1 - 2 * delta) * caps[j] for j in dims)]
    large_ids = {it.id for it in large}
    dprime = {j for j in dims if sum((it.weights[j] for it in large), F(0)) > (1 - 2 * delta) * caps[j]}
    rest = [it for it in items if it.id not in large_ids]
    prefix_len = []
    for j in dims:
        if j in dprime:
            continue
        acc, k = F(0), 0
        while k < len(rest) and acc < delta * caps[j]:
            acc += rest[k].weights[j]
            k += 1
        if acc >= delta * caps[j]:
            prefix_len.append(k)
        # otherwise v_j(rest) < delta V_j and the dimension needs no prefix
    parts = [[it] for it in large]
    start = 0
    for k in sorted(prefix_len):
        if k > start:
            parts.append(rest[start:k])
            start = k
    if rest[start:]:
        parts.append(rest[start:])
    return parts


# ---- dense box ----------------------------------------------------------------

def pack_dense_box(items: Sequence[Item], schedule: EpsilonSchedule,
                   orientation: str = "horizontal", dense: Optional[Callable] = None) -> list:
    """NFDH placement of dense items inside a 1 x delta_d box.

    ``horizontal`` takes wide and small items into a box of width 1;
    ``vertical`` takes tall and small items into a box of height 1.
    Returns ``(id, x, y)`` relative to the box corner.
    """
    s = schedule
    items = [exact_item(it) for it in items]
    if dense is None:
        def dense(it):
            return it.area == 0 or it.vmax * s.eps1 ** 2 > it.area
    for it in items:
        if not dense(it):
            raise PreconditionViolated(f"item {it.id!r} is not dense")
        short = it.height if orientation == "horizontal" else it.width
        if short > s.eps2:
            raise PreconditionViolated(f"item {it.id!r} does not fit the box orientation")
    for j in range(s.d):
        if sum((it.weights[j] for it in items), F(0)) > 1:
            raise PreconditionViolated(f"dimension {j} weight exceeds 1")
    if orientation == "horizontal":
        rects = [Rect(it.id, it.width, it.height) for it in items]
    elif orientation == "vertical":
        rects = [Rect(it.id, it.height, it.width) for it in items]
    else:
        raise ValueError("orientation must be 'horizontal' or 'vertical'")
    sp = nfdh_strip(rects, F(1))
    if sp.used_height > s.delta_d:  # pragma: no cover - excluded by the area bound
        raise PreconditionViolated("dense items overflow the box")
    if orientation == "horizontal":
        return [(i, x, y) for i, x, y in sp.placements]
    return [(i, y, x) for i, x, y in sp.placements]


# ---- linear grouping -------------------------------------------------------------

@dataclass
class LinearGrouping:
    groups: list       # list of lists of rounded Items
    unpacked: list     # rounded Items removed from the packing
    parents: dict = field(default_factory=dict)  # slice id -> (parent id, width fraction)

    def distinct_heights(self) -> int:
        return len({it.height for g in self.groups for it in g})


def linear_group(items: Sequence[Item], kind: str, delta_lg,
                 schedule: Optional[EpsilonSchedule] = None) -> LinearGrouping:
    """Round heights up to the leader of each linear group.

    ``big``: groups of k = floor(delta_lg |S|) + 1 items in non-increasing
    height order; the first group minus its leader is unpacked.
    ``tall``: items laid side by side, cut into width slices of
    delta_lg * w(S) (slicing items on the boundaries, weights split in
    proportion); the whole first group is unpacked.
    """
    items = [exact_item(it) for it in items]
    delta_lg = _q(delta_lg)
    if not items:
        return LinearGrouping([], [])
    if schedule is not None:
        want = "big" if kind == "big" else "tall"
        for it in items:
            c = classify_item(it, schedule.eps1, schedule.eps2)
            if c.shape != want or c.dense:
                raise MixedPartition(f"item {it.id!r} is not a non-dense {want} item")
    order = sorted(items, key=lambda it: -it.height)
    if kind == "big":
        w0, v0 = items[0].width, items[0].weights
        if any(it.width != w0 or it.weights != v0 for it in items):
            raise MixedPartition("big partition needs one width and one weight vector")
        k = math.floor(delta_lg * len(order)) + 1
        groups = []
        for start in range(0, len(order), k):
            g = order[start:start + k]
            lead = g[0].height
            groups.append([it.replace(height=lead) for it in g])
        return LinearGrouping(groups, groups[0][1:])
    if kind != "tall":
        raise ValueError("kind must be 'big' or 'tall'")
    ratio = tuple(v / items[0].width for v in items[0].weights)
    if any(tuple(v / it.width for v in it.weights) != ratio for it in items):
        raise MixedPartition("tall partition needs one weight-to-width ratio")
    total = sum((it.width for it in order), F(0))
    step = delta_lg * total
    ngroups = math.ceil(1 / delta_lg)
    groups = [[] for _ in range(ngroups)]
    parents = {}
    x = F(0)
    for it in order:
        left, right = x, x + it.width
        t = min(int(left / step), ngroups - 1)
        piece = 0
        while left < right:
            end = min(right, (t + 1) * step) if t < ngroups - 1 else right
            w = end - left
            if w > 0:
                sid = it.id if (left == x and end == right) else f"{it.id}#{piece}"
                child = it.replace(id=sid, width=w, weights=tuple(r * w for r in ratio))
                groups[t].append(child)
                parents[sid] = (it.id, w / it.width)
                piece += 1
            left = end
            t += 1
        x = right
    groups = [g for g in groups if g]
    out = []
    for g in groups:
        lead = g[0].height
        out.append([it.replace(height=lead) for it in g])
    return LinearGrouping(out, list(out[0]), parents)


# ---- unrounding -----------------------------------------------------------------

def unround_weights(packing: BinPacking, rounding: WeightRounding,
                    orientation: Optional[Sequence[str]] = None, mu=None) -> BinPacking:
    """Restore original items in a packing of weight-rounded items.

    Non-dense items keep their positions.  Dense items of each bin get their
    real sides back and are repacked by NFDH into the bin's reserved strip:
    a column of width delta_d at the right edge (``right``, tall and small
    items) or a row of height delta_d at the top (``top``, wide and small).
    ``orientation`` gives one tag per bin (default ``right``).  With ``mu``
    set, every input bin must be mu-slacked (mu >= eps/8).
    """
    s = rounding.schedule
    if orientation is None:
        orientation = packing.meta.get("orientation") or ["right"] * packing.bin_count
    if mu is not None and _q(mu) < s.eps / 8:
        raise SlacknessViolated("mu must be at least eps/8")
    bins = []
    for b, members in enumerate(packing.bins()):
        tag = orientation[b]
        rounded = [rounding.instance.item(p.item_id) for p in members]
        if mu is not None and not check_slack(
                rounded, _q(mu), dense=lambda it: rounding.classes[it.id].dense):
            raise SlacknessViolated(f"bin {b} is not {mu}-slacked")
        dense_ids = [p.item_id for p in members if rounding.classes[p.item_id].dense]
        solid = [p for p in members if not rounding.classes[p.item_id].dense]
        strip_lo = 1 - s.delta_d
        for p in (solid if dense_ids else ()):
            it = rounding.instance.item(p.item_id)
            far = p.x + it.width if tag == "right" else p.y + it.height
            if far > 1 - s.eps1 / 2 and it.area > 0:
                raise PreconditionViolated(f"non-dense item {p.item_id!r} enters the dense strip")
        out = [(p.item_id, p.x, p.y) for p in solid]
        if dense_ids:
            originals = [rounding.undo[i] for i in dense_ids]
            if tag == "right":
                placed = pack_dense_box(originals, s, "vertical",
                                        dense=lambda it: rounding.classes[it.id].dense)
                out += [(i, strip_lo + x, y) for i, x, y in placed]
            else:
                placed = pack_dense_box(originals, s, "horizontal",
                                        dense=lambda it: rounding.classes[it.id].dense)
                out += [(i, x, strip_lo + y) for i, x, y in placed]
        bins.append(out)
    return BinPacking.from_bins(bins)


# ---- R&A plug-ins ----------------------------------------------------------------

def toolkit_round(instance: Instance, eps=F(1, 8)):
    """Medium removal then weight rounding; one output.

    Returns a list with one ``RoundOutput`` whose ``meta`` carries the
    schedule, the weight rounding and the homogeneous classes.
    """
    from .rna import RoundOutput

    inst = exact_instance(instance)
    med, _, _, sched = rem_med(inst, eps, strict=True)
    med_set = set(med)
    rest = Instance(inst.d, tuple(it for it in inst if it.id not in med_set))
    wr = weight_round(rest, sched)
    meta = {"schedule": sched, "rounding": wr, "classes": homogeneous_classes(wr)}
    return [RoundOutput(wr.instance, frozenset(med), meta)]


def _vector_next_fit(items, cap):
    bins, load = [], None
    for it in items:
        if load is not None and all(load[j] + it.weights[j] <= cap for j in range(len(load))):
            bins[-1].append(it)
            load = [load[j] + it.weights[j] for j in range(len(load))]
        else:
            bins.append([it])
            load = list(it.weights)
    return bins


def toolkit_complex_pack(rounded: Instance, rounding: WeightRounding, mu=None) -> BinPacking:
    """mu-slacked packing of weight-rounded items (default mu = eps/8).

    Non-dense items: Next-Fit on Span with capacity 1 - mu, each group
    split into at most three bins.  Dense (zero-area) items: vector Next-Fit
    with the same capacity, tall/small and wide kept apart so each bin can
    reserve the right strip (tall/small) or the top strip (wide).
    """
    s = rounding.schedule
    cap = 1 - (s.eps / 8 if mu is None else _q(mu))
    items = list(rounded)
    solid = [it for it in items if not rounding.classes[it.id].dense]
    dense_v = [it for it in items if rounding.classes[it.id].dense
               and rounding.classes[it.id].shape != "wide"]
    dense_h = [it for it in items if rounding.classes[it.id].dense
               and rounding.classes[it.id].shape == "wide"]
    parts, tags = [], []
    groups, cur, load = [], [], F(0)
    for it in solid:
        sp = span(it)
        if cur and load + sp > cap:
            groups.append(cur)
            cur, load = [], F(0)
        cur.append(it)
        load += sp
    if cur:
        groups.append(cur)
    for g in groups:
        pk = steinberg_three_bins([Rect(it.id, it.width, it.height) for it in g])
        parts.append(pk)
        tags += ["right"] * pk.bin_count
    for group, tag in ((dense_v, "right"), (dense_h, "top")):
        for b in _vector_next_fit(group, cap):
            parts.append(BinPacking([Placement(it.id, 0, F(0), F(0)) for it in b], 1))
            tags.append(tag)
    out = BinPacking.concat(parts)
    out.meta["orientation"] = tags
    return out


def toolkit_eps(eps) -> Fraction:
    """Largest admissible 1/k (k even, k >= 8) not above ``eps``."""
    k = max(8, math.ceil(1 / _q(eps)))
    return F(1, k + k % 2)


def make_toolkit_subroutines(eps=None):
    """R&A plug-ins built from the toolkit (rational arithmetic throughout).

    With ``eps`` unset, the R&A eps is snapped down to an admissible value.
    """
    from .rna import RnaSubroutines

    state = {}

    def rnd(instance, rna_eps=F(1, 8)):
        outs = toolkit_round(instance, toolkit_eps(eps if eps is not None else rna_eps))
        state["rounding"] = outs[0].meta["rounding"]
        return outs

    def cpack(rounded):
        return toolkit_complex_pack(rounded, state["rounding"])

    def unround(pk, rounded, original):
        return unround_weights(pk, state["rounding"], mu=state["rounding"].schedule.eps / 8)

    return RnaSubroutines(rnd, cpack, unround, "toolkit")
