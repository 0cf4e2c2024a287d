"""Geometric packing kernels: Next-Fit, NFDH, Steinberg-condition packing,
the three-bin split and empty-space decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import _kernels
from ._num import TAU, tol_of
from .errors import (ConditionNotMet, InstanceTooLarge, Infeasible, InvalidInputPacking,
                     ItemExceedsBin, PreconditionViolated, SizeOutOfRange, WidthExceedsStrip)
from .feasibility import find_positions
from .model import BinPacking, Placement


@dataclass(frozen=True)
class Rect:
    id: object
    width: object
    height: object

    @property
    def area(self):
        return self.width * self.height


@dataclass
class StripPacking:
    placements: list  # (id, x, y)
    used_height: object
    strip_width: object = 1
    skipped: list = field(default_factory=list)


def _tol(*vals):
    return tol_of(*vals)


def _zero_like(v):
    return Fraction(0) if isinstance(v, (Fraction, int)) else 0.0


# ---- Next-Fit -------------------------------------------------------------------

def next_fit_1d(sizes: Sequence) -> list:
    """Groups of consecutive indices; a group closes only when the next size overflows it."""
    sizes = list(sizes)
    for s in sizes:
        if not 0 <= s <= 1:
            raise SizeOutOfRange(f"size {s} outside [0, 1]")
    if not sizes:
        return []
    labels = _kernels.next_fit_labels(sizes, _tol(*sizes))
    groups = [[] for _ in range(int(labels[-1]) + 1)]
    for i, g in enumerate(labels):
        groups[int(g)].append(i)
    return groups


# ---- NFDH -----------------------------------------------------------------------

def _split_degenerate(rects):
    solid = [r for r in rects if r.width * r.height > 0]
    flat = [r for r in rects if r.width * r.height == 0]
    return solid, flat


def _nfdh(rects, strip_width, tol):
    order = sorted(rects, key=lambda r: -r.height)  # stable: ties keep input order
    xs, ys, used = _kernels.nfdh_positions([r.width for r in order], [r.height for r in order],
                                           strip_width, tol)
    return [(r.id, x, y) for r, x, y in zip(order, xs, ys)], used


def nfdh_strip(rects: Sequence[Rect], strip_width=1) -> StripPacking:
    """Next-Fit Decreasing Height shelf packing into an open-ended strip."""
    tol = _tol(strip_width, *(r.width for r in rects))
    for r in rects:
        if r.width > strip_width + tol:
            raise WidthExceedsStrip(f"rect {r.id!r} wider than the strip")
    solid, flat = _split_degenerate(rects)
    zero = _zero_like(strip_width)
    placed, used = _nfdh(solid, strip_width, tol) if solid else ([], zero)
    placed += [(r.id, zero, zero) for r in flat]
    return StripPacking(placed, used, strip_width, [r.id for r in flat])


def nfdh_bin(rects: Sequence[Rect], W, H, deltaW, deltaH) -> BinPacking:
    """NFDH into one ``W x H`` bin; guaranteed when a <= (W - deltaW)(H - deltaH)."""
    tol = _tol(W, H, deltaW, deltaH, *(r.width for r in rects), *(r.height for r in rects))
    for r in rects:
        if r.width > deltaW + tol or r.height > deltaH + tol:
            raise PreconditionViolated(f"rect {r.id!r} exceeds the stated side bounds")
    if not rects:
        return BinPacking([], 0)
    sp = nfdh_strip(rects, W)
    if sp.used_height > H + tol:
        raise Infeasible("NFDH shelves overflow the bin height")
    return BinPacking([Placement(i, 0, x, y) for i, x, y in sp.placements], 1)


# ---- Steinberg ------------------------------------------------------------------

def steinberg_condition(rects: Sequence[Rect], W, H) -> bool:
    """The area inequality under which a packing into ``W x H`` is guaranteed."""
    if not rects:
        return True
    tol = _tol(W, H, *(r.width for r in rects), *(r.height for r in rects))
    return _cond([(r.id, r.width, r.height) for r in rects], W, H, tol)


def _cond(rs, U, V, tol):
    if not rs:
        return True
    a = max(r[1] for r in rs)
    b = max(r[2] for r in rs)
    if a > U + tol or b > V + tol:
        return False
    if len(rs) == 1:
        return True
    S = sum(r[1] * r[2] for r in rs)
    return 2 * S <= U * V - max(2 * a - U, 0) * max(2 * b - V, 0) + tol


def _stats_ok(n, a, b, S, U, V, tol):
    # _cond from precomputed aggregates
    if n == 0:
        return True
    if a > U + tol or b > V + tol or U < -tol or V < -tol:
        return False
    if n == 1:
        return True
    return 2 * S <= U * V - max(2 * a - U, 0) * max(2 * b - V, 0) + tol


class _View:
    """A task seen either directly or transposed (x <-> y, width <-> height)."""

    def __init__(self, rs, U, V, tr):
        self.tr = tr
        self.rs = [(r[0], r[2], r[1]) for r in rs] if tr else list(rs)
        self.U, self.V = (V, U) if tr else (U, V)


def _stack(view, tol):
    """Stack the wide prefix (widths >= U/2) at the bottom, recurse above it."""
    U, V = view.U, view.V
    rs = sorted(view.rs, key=lambda r: -r[1])
    n = len(rs)
    suf_h = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suf_h[k] = max(suf_h[k + 1], rs[k][2])
    hsum = 0
    for k in range(n):
        if 2 * rs[k][1] < U - tol:
            break
        hsum = hsum + rs[k][2]
        if hsum > V + tol:
            break
        if k + 1 == n or suf_h[k + 1] <= V - hsum + tol:
            placed, y = [], 0
            for r in rs[:k + 1]:
                placed.append((r[0], 0, y))
                y = y + r[2]
            sub = [(rs[k + 1:], U, V - hsum, 0, hsum)] if k + 1 < n else []
            return placed, sub
    return None


def _split(view, tol):
    """Cut the region with a vertical line; left part takes a widest-first prefix."""
    U, V = view.U, view.V
    rs = sorted(view.rs, key=lambda r: -r[1])
    n = len(rs)
    S = sum(r[1] * r[2] for r in rs)
    pre_h = [0] * (n + 1)
    for k in range(n):
        pre_h[k + 1] = max(pre_h[k], rs[k][2])
    suf_h = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suf_h[k] = max(suf_h[k + 1], rs[k][2])
    Sm = 0
    for m in range(1, n):
        Sm = Sm + rs[m - 1][1] * rs[m - 1][2]
        cands = {rs[0][1], 2 * Sm / V, U / 2, U - rs[m][1], U - 2 * (S - Sm) / V}
        for u1 in sorted(cands):
            if u1 <= 0 or u1 >= U:
                continue
            if (_stats_ok(m, rs[0][1], pre_h[m], Sm, u1, V, tol)
                    and _stats_ok(n - m, rs[m][1], suf_h[m], S - Sm, U - u1, V, tol)):
                return [], [(rs[:m], u1, V, 0, 0), (rs[m:], U - u1, V, u1, 0)]
    return None


_CORNER_MAX = 10


def _corner(view, tol):
    """Put one item in the bottom-left corner; share the rest between the
    column to its right and the block above it."""
    U, V = view.U, view.V
    rs = view.rs
    n = len(rs)
    if n > _CORNER_MAX:
        return None
    for ai in sorted(range(n), key=lambda i: -(rs[i][1] * rs[i][2])):
        anc = rs[ai]
        rest = rs[:ai] + rs[ai + 1:]
        x, y = anc[1], anc[2]
        for mask in range(1 << len(rest)):
            A = [rest[j] for j in range(len(rest)) if mask >> j & 1]
            B = [rest[j] for j in range(len(rest)) if not mask >> j & 1]
            if _cond(A, U - x, V, tol) and _cond(B, x, V - y, tol):
                sub = []
                if A:
                    sub.append((A, U - x, V, x, 0))
                if B:
                    sub.append((B, x, V - y, 0, y))
                return [(anc[0], 0, 0)], sub
    return None


def _nfdh_tool(view, tol):
    rects = [Rect(r[0], r[1], r[2]) for r in view.rs]
    placed, used = _nfdh(rects, view.U, tol)
    if used > view.V + tol:
        return None
    return placed, []


def _exact_tool(view, tol):
    try:
        pos = find_positions(view.rs, view.U, view.V, node_limit=20_000_000)
    except InstanceTooLarge:
        return None
    if pos is None:
        return None
    return [(r[0], pos[r[0]][0], pos[r[0]][1]) for r in view.rs], []


_TOOLS = (_stack, _split, _corner, _nfdh_tool, _exact_tool)


def _solve(rs, U, V, tol):
    """Pack ``(id, w, h)`` triples satisfying the condition into ``U x V``."""
    out = {}
    work = [(rs, U, V, 0, 0)]
    while work:
        rs, U, V, ox, oy = work.pop()
        if not rs:
            continue
        if len(rs) == 1:
            out[rs[0][0]] = (ox, oy)
            continue
        for tool in _TOOLS:
            res = None
            for tr in (False, True):
                res = tool(_View(rs, U, V, tr), tol)
                if res is not None:
                    break
            if res is not None:
                break
        else:  # pragma: no cover - guarded by the fuzz and property tests
            raise RuntimeError("no packing rule applied to a subproblem meeting the condition")
        placed, sub = res
        for i, px, py in placed:
            out[i] = (ox + py, oy + px) if tr else (ox + px, oy + py)
        for srs, su, sv, sx, sy in sub:
            if tr:
                work.append(([(r[0], r[2], r[1]) for r in srs], sv, su, ox + sy, oy + sx))
            else:
                work.append((srs, su, sv, ox + sx, oy + sy))
    return out


def steinberg_pack(rects: Sequence[Rect], W=1, H=1) -> BinPacking:
    """Pack into one ``W x H`` bin whenever
    ``2a <= WH - max(2 w_max - W, 0) * max(2 h_max - H, 0)``."""
    if not rects:
        return BinPacking([], 0)
    tol = _tol(W, H, *(r.width for r in rects), *(r.height for r in rects))
    for r in rects:
        if r.width > W + tol or r.height > H + tol:
            raise ItemExceedsBin(f"rect {r.id!r} does not fit a {W} x {H} bin")
    solid, flat = _split_degenerate(rects)
    rs = [(r.id, r.width, r.height) for r in solid]
    if not _cond(rs, W, H, tol):
        raise ConditionNotMet("2a(I) exceeds the guaranteed packable area")
    pos = _solve(rs, W, H, tol) if rs else {}
    zero = _zero_like(W)
    pl = [Placement(r.id, 0, zero + pos[r.id][0], zero + pos[r.id][1]) for r in solid]
    pl += [Placement(r.id, 0, zero, zero) for r in flat]
    return BinPacking(pl, 1)


def steinberg_three_bins(rects: Sequence[Rect]) -> BinPacking:
    """At most three unit bins for rects of total area <= 1.

    Pack into a 2 x 1 region and cut at x = 1; items crossing the cut have
    pairwise disjoint y-ranges, so stacking them fills at most one more bin.
    """
    if not rects:
        return BinPacking([], 0)
    tol = _tol(*(r.width for r in rects), *(r.height for r in rects))
    if sum(r.area for r in rects) > 1 + tol:
        raise PreconditionViolated("total area exceeds 1")
    for r in rects:
        if r.width > 1 + tol or r.height > 1 + tol:
            raise PreconditionViolated(f"rect {r.id!r} does not fit a unit bin")
    one = Fraction(1) if tol == 0 else 1.0
    if steinberg_condition(rects, one, one):
        return steinberg_pack(rects, one, one)
    big = steinberg_pack(rects, 2 * one, one)
    size = {r.id: (r.width, r.height) for r in rects}
    bins = [[], [], []]
    cross = []
    for p in big.placements:
        w, h = size[p.item_id]
        if p.x + w <= 1 + tol:
            bins[0].append((p.item_id, p.x, p.y))
        elif p.x >= 1 - tol:
            bins[1].append((p.item_id, max(p.x - 1, 0 * p.x), p.y))
        else:
            cross.append((p.y, p.item_id))
    y = 0 * one
    for _, i in sorted(cross):
        bins[2].append((i, 0 * one, y))
        y = y + size[i][1]
    return BinPacking.from_bins(bins)


# ---- empty space ----------------------------------------------------------------

@dataclass(frozen=True)
class EmptyRect:
    x: object
    y: object
    width: object
    height: object

    @property
    def area(self):
        return self.width * self.height


def decompose_empty_space(placed: Sequence[tuple], direction: str = "horizontal") -> list:
    """Partition the free part of the unit bin into at most ``3n + 1`` rectangles.

    ``placed`` holds ``(x, y, w, h)`` tuples.  ``horizontal`` extends the top
    and bottom edge of every rect sideways until it meets another rect or the
    bin wall; ``vertical`` does the same with left and right edges.
    """
    if direction not in ("horizontal", "vertical"):
        raise ValueError("direction must be 'horizontal' or 'vertical'")
    rs = [tuple(r) for r in placed if r[2] * r[3] > 0]
    vals = [v for r in rs for v in r]
    tol = _tol(*vals)
    one = Fraction(1) if tol == 0 else 1.0
    for r in rs:
        if r[0] < -tol or r[1] < -tol or r[0] + r[2] > 1 + tol or r[1] + r[3] > 1 + tol:
            raise InvalidInputPacking(f"rect {r} leaves the unit bin")
    xs = [r[0] for r in rs]
    if _kernels.overlapping_pairs(xs, [r[1] for r in rs], [r[2] for r in rs],
                                  [r[3] for r in rs], tol):
        raise InvalidInputPacking("input rects overlap")
    if direction == "vertical":
        rs = [(r[1], r[0], r[3], r[2]) for r in rs]
    out = _sweep(rs, one, tol)
    if direction == "vertical":
        out = [EmptyRect(e.y, e.x, e.height, e.width) for e in out]
    return out


def _sweep(rs, one, tol):
    zero = 0 * one
    levels = sorted({zero, one} | {r[1] for r in rs} | {r[1] + r[3] for r in rs})
    if tol:
        merged = [levels[0]]
        for v in levels[1:]:
            if v - merged[-1] > tol:
                merged.append(v)
        levels = merged
    eq = (lambda a, b: abs(a - b) <= tol)

    def free_intervals(lo, hi):
        blocks = sorted((r[0], r[0] + r[2]) for r in rs
                        if r[1] <= lo + tol and r[1] + r[3] >= hi - tol)
        res, x = [], zero
        for a, b in blocks:
            if a > x + tol:
                res.append((x, a))
            x = max(x, b)
        if x < one - tol:
            res.append((x, one))
        return res

    def continues(L, R, c):
        # an edge lying on height c and touching [L, R] is extended across it
        for r in rs:
            if (eq(r[1], c) or eq(r[1] + r[3], c)) and r[0] <= R + tol and r[0] + r[2] >= L - tol:
                return False
        return True

    out = []
    open_faces = {}  # (L, R) -> start y
    for k in range(len(levels) - 1):
        lo, hi = levels[k], levels[k + 1]
        nxt = {}
        for L, R in free_intervals(lo, hi):
            key = None
            for (a, b), y0 in open_faces.items():
                if eq(a, L) and eq(b, R) and continues(L, R, lo):
                    key = (a, b)
                    break
            if key is not None:
                nxt[(L, R)] = open_faces.pop(key)
            else:
                nxt[(L, R)] = lo
        for (a, b), y0 in open_faces.items():
            out.append(EmptyRect(a, y0, b - a, lo - y0))
        open_faces = nxt
    for (a, b), y0 in open_faces.items():
        out.append(EmptyRect(a, y0, b - a, one - y0))
    return out
