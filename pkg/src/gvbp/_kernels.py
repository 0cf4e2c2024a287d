"""Hot loops: overlap detection, Next-Fit, NFDH shelves, normal-position search
and knapsack branch-and-bound.

Each kernel is written in the numba subset of Python.  With numba available
and ``GVBP_DISABLE_NUMBA`` unset, the float64 entry points are compiled with
``@njit``; otherwise the same source runs as plain numpy code.  Exact
(``Fraction``) inputs always take the interpreted path on object arrays, so
the compiled kernels only ever see float64.
"""
from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

_FLAG = os.environ.get("GVBP_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = _FLAG in ("", "0", "false", "no")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False


def _jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _is_float_data(*seqs) -> bool:
    for s in seqs:
        for v in s:
            if isinstance(v, Fraction):
                return False
    return True


# ---- pairwise overlap -------------------------------------------------------

def _overlap_pairs_py(x, y, w, h, tol):
    out = []
    n = len(x)
    order = sorted(range(n), key=lambda i: x[i])
    for a in range(n):
        i = order[a]
        xi_end = x[i] + w[i]
        for b in range(a + 1, n):
            j = order[b]
            if x[j] >= xi_end - tol:
                break
            if y[i] < y[j] + h[j] - tol and y[j] < y[i] + h[i] - tol:
                out.append((min(i, j), max(i, j)))
    return out


def _overlap_count_src(x, y, w, h, tol, out):
    n = x.shape[0]
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (x[i] < x[j] + w[j] - tol and x[j] < x[i] + w[i] - tol
                    and y[i] < y[j] + h[j] - tol and y[j] < y[i] + h[i] - tol):
                if k < out.shape[0]:
                    out[k, 0] = i
                    out[k, 1] = j
                k += 1
    return k


_overlap_count_nb = _jit(_overlap_count_src)


def overlap_pairs_numpy(x, y, w, h, tol):
    """Broadcasting version: O(n^2) memory, no Python loop over pairs."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    ox = (x[:, None] < (x + w)[None, :] - tol) & (x[None, :] < (x + w)[:, None] - tol)
    oy = (y[:, None] < (y + h)[None, :] - tol) & (y[None, :] < (y + h)[:, None] - tol)
    hit = np.triu(ox & oy, k=1)
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(hit))]


def overlap_pairs_numba(x, y, w, h, tol):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    out = np.empty((64, 2), dtype=np.int64)
    k = _overlap_count_nb(x, y, w, h, float(tol), out)
    if k > out.shape[0]:
        out = np.empty((k, 2), dtype=np.int64)
        _overlap_count_nb(x, y, w, h, float(tol), out)
    return [(int(out[i, 0]), int(out[i, 1])) for i in range(k)]


def overlapping_pairs(x, y, w, h, tol):
    """Index pairs of rectangles whose open interiors intersect."""
    if len(x) < 2:
        return []
    if not _is_float_data(x, y, w, h):
        return _overlap_pairs_py(x, y, w, h, tol)
    if USE_NUMBA:
        return overlap_pairs_numba(x, y, w, h, tol)
    return overlap_pairs_numpy(x, y, w, h, tol)


# ---- Next-Fit -----------------------------------------------------------------

def _next_fit_src(sizes, tol, labels):
    g = 0
    load = sizes[0] * 0
    for i in range(sizes.shape[0]):
        s = sizes[i]
        if i > 0 and load + s > 1 + tol:
            g += 1
            load = s * 0
        load = load + s
        labels[i] = g
    return g + 1


_next_fit_nb = _jit(_next_fit_src)


def next_fit_labels(sizes, tol) -> np.ndarray:
    n = len(sizes)
    labels = np.zeros(n, dtype=np.int64)
    if n == 0:
        return labels
    if _is_float_data(sizes):
        arr = np.asarray(sizes, dtype=np.float64)
        if USE_NUMBA:
            _next_fit_nb(arr, float(tol), labels)
        else:
            _next_fit_src(arr, float(tol), labels)
    else:
        _next_fit_src(np.asarray(list(sizes), dtype=object), tol, labels)
    return labels


# ---- NFDH shelves ---------------------------------------------------------------

def _nfdh_src(widths, heights, strip_width, tol, xs, ys):
    """Rects already sorted by non-increasing height.  Returns used height."""
    n = widths.shape[0]
    if n == 0:
        return strip_width * 0
    shelf_y = strip_width * 0
    shelf_h = heights[0]
    x = strip_width * 0
    for i in range(n):
        if x + widths[i] > strip_width + tol:
            shelf_y = shelf_y + shelf_h
            shelf_h = heights[i]
            x = strip_width * 0
        xs[i] = x
        ys[i] = shelf_y
        x = x + widths[i]
    return shelf_y + shelf_h


_nfdh_nb = _jit(_nfdh_src)


def nfdh_positions(widths, heights, strip_width, tol):
    """Shelf positions for rects given in packing order (tallest first)."""
    n = len(widths)
    if _is_float_data(widths, heights, [strip_width]):
        w = np.asarray(widths, dtype=np.float64)
        h = np.asarray(heights, dtype=np.float64)
        xs = np.zeros(n)
        ys = np.zeros(n)
        fn = _nfdh_nb if USE_NUMBA else _nfdh_src
        used = fn(w, h, float(strip_width), float(tol), xs, ys)
        return xs.tolist(), ys.tolist(), float(used)
    w = np.asarray(list(widths), dtype=object)
    h = np.asarray(list(heights), dtype=object)
    xs = np.empty(n, dtype=object)
    ys = np.empty(n, dtype=object)
    used = _nfdh_src(w, h, Fraction(strip_width), tol, xs, ys)
    return list(xs), list(ys), used


# ---- normal-position search ---------------------------------------------------

def _search_src(w, h, xc, nxc, yc, nyc, same, bw, bh, tol, node_limit, X, Y):
    """Depth-first search over candidate positions.

    Returns 1 if a placement was found (written to X, Y), 0 if none exists,
    -1 if ``node_limit`` candidate tests were exhausted first.
    """
    n = w.shape[0]
    if n == 0:
        return 1
    pos = np.zeros(n, dtype=np.int64)
    pos[0] = -1
    nodes = 0
    k = 0
    while k >= 0:
        if k == n:
            return 1
        pos[k] += 1
        advanced = False
        total = nxc[k] * nyc[k]
        while pos[k] < total:
            nodes += 1
            if nodes > node_limit:
                return -1
            iy = pos[k] // nxc[k]
            ix = pos[k] % nxc[k]
            xx = xc[k, ix]
            yy = yc[k, iy]
            if same[k] and (yy < Y[k - 1] or (yy == Y[k - 1] and xx < X[k - 1])):
                pos[k] += 1
                continue
            ok = xx + w[k] <= bw + tol and yy + h[k] <= bh + tol
            if ok:
                for j in range(k):
                    if (xx < X[j] + w[j] - tol and X[j] < xx + w[k] - tol
                            and yy < Y[j] + h[j] - tol and Y[j] < yy + h[k] - tol):
                        ok = False
                        break
            if ok:
                X[k] = xx
                Y[k] = yy
                advanced = True
                break
            pos[k] += 1
        if advanced:
            k += 1
            if k < n:
                pos[k] = -1
        else:
            k -= 1
    return 0


_search_nb = _jit(_search_src)


def search_positions(w, h, xcands, ycands, same, bw, bh, tol, node_limit):
    """Run the placement search.  ``xcands``/``ycands`` are per-item lists."""
    n = len(w)
    width = max([len(c) for c in xcands] + [len(c) for c in ycands] + [1])
    floaty = _is_float_data(w, h, [bw, bh], *xcands, *ycands)
    dt = np.float64 if floaty else object
    xc = np.zeros((n, width), dtype=dt)
    yc = np.zeros((n, width), dtype=dt)
    for i in range(n):
        xc[i, :len(xcands[i])] = xcands[i]
        yc[i, :len(ycands[i])] = ycands[i]
    nx = np.array([len(c) for c in xcands], dtype=np.int64)
    ny = np.array([len(c) for c in ycands], dtype=np.int64)
    sm = np.array(same, dtype=np.bool_)
    W = np.array(list(w), dtype=dt)
    H = np.array(list(h), dtype=dt)
    X = np.zeros(n, dtype=dt)
    Y = np.zeros(n, dtype=dt)
    if floaty:
        fn = _search_nb if USE_NUMBA else _search_src
        st = fn(W, H, xc, nx, yc, ny, sm, float(bw), float(bh), float(tol), int(node_limit), X, Y)
        return int(st), X.tolist(), Y.tolist()
    st = _search_src(W, H, xc, nx, yc, ny, sm, bw, bh, tol, int(node_limit), X, Y)
    return int(st), list(X), list(Y)


# ---- vector knapsack branch-and-bound -------------------------------------------

def _frac_bound_src(V, p, rank_of, orders, depth, resid):
    """Smallest over dimensions of the fractional (Dantzig) relaxation bound."""
    n = V.shape[0]
    D = V.shape[1]
    best = p[0] * 0
    for j in range(D):
        cap = resid[j]
        val = p[0] * 0
        for t in range(n):
            i = orders[j, t]
            if rank_of[i] < depth:
                continue
            vj = V[i, j]
            if vj <= cap:
                cap = cap - vj
                val = val + p[i]
            else:
                val = val + p[i] * cap / vj
                break
        if j == 0 or val < best:
            best = val
    return best


def _make_knap(bound):
    def knap(V, p, branch, rank_of, orders, tol, node_limit, take):
        """Exact 0/1 knapsack with unit capacities in every dimension.

        Items are branched in ``branch`` order, take-first.  Writes the best
        subset to ``take[:n]`` and sets ``take[n] = 1`` if ``node_limit`` cut
        the search short.
        """
        n = V.shape[0]
        D = V.shape[1]
        resid = np.empty(D, dtype=V.dtype)
        for j in range(D):
            resid[j] = V[0, 0] * 0 + 1 + tol
        cur = np.zeros(n, dtype=np.int64)
        state = np.zeros(n + 1, dtype=np.int64)
        best = p[0] * 0 - 1
        profit = p[0] * 0
        nodes = 0
        depth = 0
        while depth >= 0:
            if depth == n:
                if profit > best:
                    best = profit
                    for i in range(n):
                        take[i] = cur[i]
                depth -= 1
                continue
            i = branch[depth]
            if state[depth] == 0:
                nodes += 1
                if nodes > node_limit:
                    take[n] = 1
                    return best
                if profit + bound(V, p, rank_of, orders, depth, resid) <= best:
                    depth -= 1
                    continue
                state[depth] = 1
                fits = True
                for j in range(D):
                    if V[i, j] > resid[j]:
                        fits = False
                        break
                if fits:
                    for j in range(D):
                        resid[j] = resid[j] - V[i, j]
                    cur[i] = 1
                    profit = profit + p[i]
                    depth += 1
                    state[depth] = 0
                    continue
            if state[depth] == 1:
                if cur[i] == 1:
                    for j in range(D):
                        resid[j] = resid[j] + V[i, j]
                    cur[i] = 0
                    profit = profit - p[i]
                state[depth] = 2
                depth += 1
                state[depth] = 0
                continue
            depth -= 1
        return best
    return knap


_knap_py = _make_knap(_frac_bound_src)
_knap_nb = None


def knapsack_bb(vectors, profits, tol, node_limit=50_000_000):
    """Maximum-profit subset with coordinate sums <= 1 (+tol).

    Returns ``(mask, profit, complete)``.
    """
    global _knap_nb
    n = len(profits)
    if n == 0:
        return [], 0, True
    D = len(vectors[0]) if n else 0
    floaty = _is_float_data(profits, *vectors)
    dt = np.float64 if floaty else object
    V = np.array([list(v) for v in vectors], dtype=dt).reshape(n, D)
    p = np.array(list(profits), dtype=dt)
    if D == 0:
        return [1] * n, sum(profits), True
    # branch on items by decreasing profit per total size
    size = [sum(vectors[i]) for i in range(n)]
    key = [(-(profits[i] / size[i]) if size[i] > 0 else -float("inf")) for i in range(n)]
    branch = np.array(sorted(range(n), key=lambda i: (key[i], i)), dtype=np.int64)
    rank_of = np.empty(n, dtype=np.int64)
    rank_of[branch] = np.arange(n)
    orders = np.empty((D, n), dtype=np.int64)
    for j in range(D):
        kj = [(-(profits[i] / vectors[i][j]) if vectors[i][j] > 0 else -float("inf")) for i in range(n)]
        orders[j] = sorted(range(n), key=lambda i: (kj[i], i))
    take = np.zeros(n + 1, dtype=np.int64)
    if floaty and USE_NUMBA:
        if _knap_nb is None:
            _knap_nb = numba.njit(_make_knap(numba.njit(_frac_bound_src)))
        best = float(_knap_nb(V, p, branch, rank_of, orders, float(tol), int(node_limit), take))
    else:
        best = _knap_py(V, p, branch, rank_of, orders, float(tol) if floaty else tol,
                        int(node_limit), take)
    complete = take[n] == 0
    return [int(t) for t in take[:n]], best, complete
