"""Items, instances, packings, item measures and the packing validator."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _num
from ._num import Number, ceil, fmt, leq, parse_number
from .errors import DuplicateItemId, InvalidItem, MediumItem


@dataclass(frozen=True)
class Item:
    id: str
    width: Number
    height: Number
    weights: tuple = ()
    profit: Optional[Number] = None

    def __post_init__(self):
        # plain ints are exact values
        def exact(x):
            return Fraction(x) if isinstance(x, int) and not isinstance(x, bool) else x
        object.__setattr__(self, "width", exact(self.width))
        object.__setattr__(self, "height", exact(self.height))
        object.__setattr__(self, "weights", tuple(exact(x) for x in self.weights))
        if self.profit is not None:
            object.__setattr__(self, "profit", exact(self.profit))
        for name in ("width", "height"):
            val = getattr(self, name)
            if not 0 <= val <= 1:
                raise InvalidItem(f"item {self.id!r}: {name} {val} outside [0, 1]")
        object.__setattr__(self, "weights", tuple(self.weights))
        for j, val in enumerate(self.weights):
            if not 0 <= val <= 1:
                raise InvalidItem(f"item {self.id!r}: weight {j} = {val} outside [0, 1]")
        if self.profit is not None and self.profit < 0:
            raise InvalidItem(f"item {self.id!r}: negative profit")
        # a degenerate rectangle occupies no space; store it as a point
        if self.width * self.height == 0:
            zero = type(self.width)(0)
            object.__setattr__(self, "width", zero)
            object.__setattr__(self, "height", type(self.height)(0))

    @property
    def w(self):
        return self.width

    @property
    def h(self):
        return self.height

    @property
    def v(self):
        return self.weights

    @property
    def area(self):
        return self.width * self.height

    @property
    def vmax(self):
        return max(self.weights, default=self.width * 0)

    def replace(self, **changes) -> "Item":
        data = dict(id=self.id, width=self.width, height=self.height,
                    weights=self.weights, profit=self.profit)
        data.update(changes)
        return Item(**data)


def _coerce_item(item: Item, to_float: bool) -> Item:
    if not to_float:
        return item
    return Item(item.id, float(item.width), float(item.height),
                tuple(float(x) for x in item.weights),
                None if item.profit is None else float(item.profit))


@dataclass(frozen=True)
class Instance:
    d: int
    items: tuple = ()

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 0:
            raise InvalidItem(f"d must be a nonnegative integer, got {self.d!r}")
        items = tuple(self.items)
        seen = set()
        for it in items:
            if len(it.weights) != self.d:
                raise InvalidItem(f"item {it.id!r} has {len(it.weights)} weights, expected {self.d}")
            if it.id in seen:
                raise DuplicateItemId(it.id)
            seen.add(it.id)
        # one numeric mode per instance: any float demotes everything to float
        vals = [x for it in items for x in _item_values(it)]
        exact = _num.is_exact(vals)
        items = tuple(_coerce_item(it, not exact) for it in items)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_exact", exact)
        object.__setattr__(self, "_by_id", {it.id: it for it in items})

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def tol(self):
        return 0 if self._exact else _num.TAU

    def zero(self):
        return Fraction(0) if self._exact else 0.0

    def one(self):
        return Fraction(1) if self._exact else 1.0

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def item(self, item_id) -> Item:
        return self._by_id[item_id]

    def subset(self, ids: Iterable) -> "Instance":
        ids = set(ids)
        return Instance(self.d, tuple(it for it in self.items if it.id in ids))

    def with_items(self, items: Iterable[Item]) -> "Instance":
        return Instance(self.d, tuple(items))


def _item_values(it: Item):
    yield it.width
    yield it.height
    yield from it.weights
    if it.profit is not None:
        yield it.profit


def span(item: Item):
    """Largest of the item's area and its weights."""
    return max(item.area, item.vmax)


@dataclass(frozen=True)
class SpanStats:
    span_total: Number
    vol_total: Number
    per_dim_weight: tuple
    lower_bound_bins: int


def span_total(items: Iterable[Item]):
    return sum((span(it) for it in items), Fraction(0))


def span_stats(instance: Instance) -> SpanStats:
    zero = instance.zero()
    tot = sum((span(it) for it in instance), zero)
    vol = sum((it.area for it in instance), zero)
    per_dim = tuple(sum((it.weights[j] for it in instance), zero) for j in range(instance.d))
    return SpanStats(tot, vol, per_dim, span_lower_bound(instance))


def span_lower_bound(instance: Instance) -> int:
    """Bins needed by any packing: ceil(ceil(Span) / (d+1))."""
    tot = sum((span(it) for it in instance), instance.zero())
    k = ceil(tot)
    return -(-k // (instance.d + 1))


@dataclass(frozen=True)
class ItemClass:
    shape: str  # big | wide | tall | small
    dense: bool
    heavy: bool


def classify_item(item: Item, eps1, eps2) -> ItemClass:
    if not 0 < eps2 < eps1 <= 1:
        raise ValueError("need 0 < eps2 < eps1 <= 1")
    for name, val in (("width", item.width), ("height", item.height)):
        if eps2 < val <= eps1:
            raise MediumItem(f"item {item.id!r}: {name} {val} in ({eps2}, {eps1}]")
    wide = item.width > eps1
    tall = item.height > eps1
    shape = {(True, True): "big", (True, False): "wide",
             (False, True): "tall", (False, False): "small"}[(wide, tall)]
    a = item.area
    dense = a == 0 or item.vmax * eps1 * eps1 > a
    heavy = dense and any(x >= eps1 for x in item.weights)
    return ItemClass(shape, dense, heavy)


@dataclass(frozen=True)
class Placement:
    item_id: str
    bin_index: int
    x: Number
    y: Number


@dataclass
class BinPacking:
    placements: list = field(default_factory=list)
    bin_count: int = 0
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_bins(cls, bins: Sequence[Sequence[tuple]]) -> "BinPacking":
        """Build from per-bin lists of ``(item_id, x, y)``; empty bins are dropped."""
        out = []
        k = 0
        for b in bins:
            if not b:
                continue
            out.extend(Placement(i, k, x, y) for i, x, y in b)
            k += 1
        return cls(out, k)

    def bins(self) -> list:
        res = [[] for _ in range(self.bin_count)]
        for p in self.placements:
            res[p.bin_index].append(p)
        return res

    def item_ids(self) -> list:
        return [p.item_id for p in self.placements]

    def shifted(self, offset: int) -> list:
        return [Placement(p.item_id, p.bin_index + offset, p.x, p.y) for p in self.placements]

    @staticmethod
    def concat(packings: Iterable["BinPacking"]) -> "BinPacking":
        out, k = [], 0
        for pk in packings:
            out.extend(pk.shifted(k))
            k += pk.bin_count
        return BinPacking(out, k)


@dataclass(frozen=True)
class Violation:
    kind: str  # unknown_item | duplicate | bin_index | containment | overlap | weight | missing
    detail: str
    items: tuple = ()
    bin_index: Optional[int] = None


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{v.kind}: {v.detail}" for v in self.violations[:10])


def validate_packing(instance: Instance, packing: BinPacking,
                     require_all_packed: bool = True, tol=None) -> ValidationReport:
    from . import _kernels

    if tol is None:
        tol = instance.tol
    rep = ValidationReport()
    bad = rep.violations.append
    seen = set()
    per_bin: dict = {}
    for p in packing.placements:
        if p.item_id not in instance._by_id:
            bad(Violation("unknown_item", f"{p.item_id!r} not in instance", (p.item_id,)))
            continue
        if p.item_id in seen:
            bad(Violation("duplicate", f"{p.item_id!r} placed twice", (p.item_id,)))
            continue
        seen.add(p.item_id)
        if not (isinstance(p.bin_index, int) and 0 <= p.bin_index < packing.bin_count):
            bad(Violation("bin_index", f"{p.item_id!r} in bin {p.bin_index} of {packing.bin_count}",
                          (p.item_id,), p.bin_index))
            continue
        it = instance._by_id[p.item_id]
        if not (p.x >= -tol and p.y >= -tol and p.x + it.width <= 1 + tol
                and p.y + it.height <= 1 + tol):
            bad(Violation("containment", f"{p.item_id!r} at ({fmt(p.x)}, {fmt(p.y)}) leaves the bin",
                          (p.item_id,), p.bin_index))
        per_bin.setdefault(p.bin_index, []).append((it, p))

    for b, members in sorted(per_bin.items()):
        for j in range(instance.d):
            s = sum((it.weights[j] for it, _ in members), instance.zero())
            if s > 1 + tol:
                bad(Violation("weight", f"bin {b} dimension {j} sums to {fmt(s)}",
                              tuple(it.id for it, _ in members), b))
        solid = [(it, p) for it, p in members if it.area > 0]
        for i, k in _kernels.overlapping_pairs(
                [p.x for _, p in solid], [p.y for _, p in solid],
                [it.width for it, _ in solid], [it.height for it, _ in solid], tol):
            a, c = solid[i][0].id, solid[k][0].id
            bad(Violation("overlap", f"{a!r} and {c!r} overlap in bin {b}", (a, c), b))

    if require_all_packed:
        missing = [it.id for it in instance if it.id not in seen]
        if missing:
            bad(Violation("missing", f"{len(missing)} item(s) not packed: {missing[:5]}",
                          tuple(missing)))
    return rep


# ---- JSON ------------------------------------------------------------------

def instance_from_dict(data: dict) -> Instance:
    d = data.get("d", 0)
    items = []
    for raw in data.get("items", []):
        p = raw.get("p")
        items.append(Item(str(raw["id"]), parse_number(raw["w"]), parse_number(raw["h"]),
                          tuple(parse_number(x) for x in raw.get("v", [])),
                          None if p is None else parse_number(p)))
    return Instance(int(d), tuple(items))


def instance_to_dict(instance: Instance) -> dict:
    items = []
    for it in instance:
        row = {"id": it.id, "w": _num.to_json(it.width), "h": _num.to_json(it.height),
               "v": [_num.to_json(x) for x in it.weights]}
        if it.profit is not None:
            row["p"] = _num.to_json(it.profit)
        items.append(row)
    return {"d": instance.d, "items": items}


def load_instance(path) -> Instance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def dump_instance(instance: Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(instance), fh, indent=1)
        fh.write("\n")


def packing_to_dict(packing: BinPacking) -> dict:
    return {"bin_count": packing.bin_count,
            "placements": [{"id": p.item_id, "bin": p.bin_index,
                            "x": _num.to_json(p.x), "y": _num.to_json(p.y)}
                           for p in packing.placements]}


def packing_from_dict(data: dict) -> BinPacking:
    pl = [Placement(str(r["id"]), int(r["bin"]), parse_number(r["x"]), parse_number(r["y"]))
          for r in data.get("placements", [])]
    return BinPacking(pl, int(data.get("bin_count", 0)))
