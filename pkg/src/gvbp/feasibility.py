"""Exact single-bin rectangle feasibility by search over normal positions.

Any feasible packing can be pushed left and down until every item touches
the wall or another item, after which each x-coordinate is a sum of widths of
other items (and likewise for y).  Searching those candidates is therefore
complete.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from ._num import TAU, common_denominator
from .errors import InstanceTooLarge

NODE_LIMIT = 200_000_000
_MAX_SCALE = 2 ** 40


def _subset_sums(values, cap, exact):
    sums = {0}
    for v in values:
        sums |= {s + v for s in sums if s + v <= cap}
    out = sorted(sums)
    if not exact and out:
        # merge float sums closer than the tolerance
        merged = [out[0]]
        for s in out[1:]:
            if s - merged[-1] > TAU:
                merged.append(s)
        out = merged
    return out


def find_positions(rects: Sequence[tuple], W=1, H=1, node_limit: int = NODE_LIMIT
                   ) -> Optional[dict]:
    """Place ``rects`` (``(key, w, h)`` triples) in a ``W x H`` bin.

    Returns ``{key: (x, y)}`` or ``None`` when no placement exists.  Raises
    :class:`InstanceTooLarge` if the search budget runs out before deciding.
    """
    solid = [r for r in rects if r[1] * r[2] > 0]
    flat = [r for r in rects if r[1] * r[2] == 0]
    values = [W, H] + [r[1] for r in rects] + [r[2] for r in rects]
    exact = all(isinstance(v, (Fraction, int)) for v in values)
    zero = Fraction(0) if exact else 0.0
    if any(r[1] > W or r[2] > H for r in flat):
        return None
    res = {r[0]: (zero, zero) for r in flat}
    if not solid:
        return res
    if sum(r[1] * r[2] for r in solid) > W * H + (0 if exact else TAU):
        return None

    scale = 1
    if exact:
        scale = common_denominator(Fraction(v) for v in values)
        big = max(Fraction(v) * scale for v in values)
        if scale * big * len(solid) > _MAX_SCALE:
            scale = 0  # fall back to object arithmetic
    order = sorted(range(len(solid)), key=lambda i: (-(solid[i][1] * solid[i][2]),
                                                    -solid[i][1], -solid[i][2], i))
    items = [solid[i] for i in order]
    if exact and scale:
        conv = lambda v: float(Fraction(v) * scale)
        tol = 0.0
    elif exact:
        conv = Fraction
        tol = 0
    else:
        conv = float
        tol = TAU
    ws = [conv(r[1]) for r in items]
    hs = [conv(r[2]) for r in items]
    bw, bh = conv(W), conv(H)
    exact_sums = tol == 0
    xc, yc = [], []
    for k in range(len(items)):
        others_w = ws[:k] + ws[k + 1:]
        others_h = hs[:k] + hs[k + 1:]
        xc.append(_subset_sums(others_w, bw - ws[k] + tol, exact_sums))
        yc.append(_subset_sums(others_h, bh - hs[k] + tol, exact_sums))
        if not xc[-1] or not yc[-1]:
            return None
    same = [k > 0 and ws[k] == ws[k - 1] and hs[k] == hs[k - 1] for k in range(len(items))]
    status, X, Y = _kernels.search_positions(ws, hs, xc, yc, same, bw, bh, tol, node_limit)
    if status < 0:
        raise InstanceTooLarge("placement search budget exhausted")
    if status == 0:
        return None
    for k, r in enumerate(items):
        if exact and scale:
            res[r[0]] = (Fraction(int(round(X[k]))) / scale, Fraction(int(round(Y[k]))) / scale)
        else:
            res[r[0]] = (X[k], Y[k])
    return res
