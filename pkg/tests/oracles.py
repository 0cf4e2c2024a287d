"""Independent reference implementations used only by the tests."""
from fractions import Fraction
from itertools import product


def overlaps(a, b):
    """Open-interior intersection of (x, y, w, h) boxes."""
    return (a[0] < b[0] + b[2] and b[0] < a[0] + a[2]
            and a[1] < b[1] + b[3] and b[1] < a[1] + a[3]
            and a[2] * a[3] > 0 and b[2] * b[3] > 0)


def packing_ok(instance, packing, tol=0):
    seen = set()
    ids = {it.id for it in instance}
    by_bin = {}
    for p in packing.placements:
        if p.item_id not in ids or p.item_id in seen or not 0 <= p.bin_index < packing.bin_count:
            return False
        seen.add(p.item_id)
        it = instance.item(p.item_id)
        if p.x < -tol or p.y < -tol or p.x + it.width > 1 + tol or p.y + it.height > 1 + tol:
            return False
        by_bin.setdefault(p.bin_index, []).append((it, (p.x, p.y, it.width, it.height)))
    for members in by_bin.values():
        for j in range(instance.d):
            if sum(it.weights[j] for it, _ in members) > 1 + tol:
                return False
        for k in range(len(members)):
            for m in range(k):
                if overlaps(members[k][1], members[m][1]):
                    return False
    return seen == ids


def grid_fits(items, K):
    """Place items on the 1/K grid by plain backtracking over every cell
    (complete for grid instances: left/bottom-pushed packings sit on it)."""
    solid = [(round(it.width * K), round(it.height * K)) for it in items if it.width * it.height > 0]
    solid.sort(reverse=True)
    occ = [[False] * K for _ in range(K)]

    def free(x, y, w, h):
        return all(not occ[a][b] for a in range(x, x + w) for b in range(y, y + h))

    def mark(x, y, w, h, val):
        for a in range(x, x + w):
            for b in range(y, y + h):
                occ[a][b] = val

    def go(k):
        if k == len(solid):
            return True
        w, h = solid[k]
        for x, y in product(range(K - w + 1), range(K - h + 1)):
            if free(x, y, w, h):
                mark(x, y, w, h, True)
                if go(k + 1):
                    return True
                mark(x, y, w, h, False)
        return False

    return go(0)


def set_partitions(seq):
    if not seq:
        yield []
        return
    first, rest = seq[0], seq[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def grid_opt(instance, K):
    """Minimum bins by enumerating set partitions, grid search per bin."""
    best = None
    cache = {}
    for part in set_partitions(list(instance)):
        if best is not None and len(part) >= best:
            continue
        ok = True
        for b in part:
            key = frozenset(it.id for it in b)
            if key not in cache:
                cache[key] = (all(sum(it.weights[j] for it in b) <= 1 for j in range(instance.d))
                              and grid_fits(b, K))
            if not cache[key]:
                ok = False
                break
        if ok:
            best = len(part)
    return best or 0


def best_single_bin_profit(instance, K):
    items = list(instance)
    best = Fraction(0)
    for mask in range(1 << len(items)):
        b = [items[i] for i in range(len(items)) if mask >> i & 1]
        p = sum((it.profit for it in b), Fraction(0))
        if p <= best:
            continue
        if all(sum(it.weights[j] for it in b) <= 1 for j in range(instance.d)) and grid_fits(b, K):
            best = p
    return best
