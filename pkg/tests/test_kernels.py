import json
import os
import subprocess
import sys

import numpy as np
import pytest

from gvbp import _kernels

PROBE = r'''
import json, random
import numpy as np
from gvbp import _kernels
rng = random.Random(4)
out = {"backend": _kernels.backend()}
sizes = [rng.random() for _ in range(200)]
out["nf"] = [int(v) for v in _kernels.next_fit_labels(sizes, 1e-9)]
ws = [rng.random() for _ in range(60)]
hs = sorted((rng.random() for _ in range(60)), reverse=True)
xs, ys, used = _kernels.nfdh_positions(ws, hs, 1.0, 1e-9)
out["nfdh"] = [list(map(float, xs)), list(map(float, ys)), float(used)]
kn = []
for t in range(30):
    n = rng.randint(1, 14)
    vec = [[rng.random() * 0.6 for _ in range(3)] for _ in range(n)]
    prof = [rng.random() for _ in range(n)]
    mask, p, done = _kernels.knapsack_bb(vec, prof, 1e-9)
    kn.append([[bool(m) for m in mask], round(float(p), 9), bool(done)])
out["knap"] = kn
x = [rng.random() * 0.8 for _ in range(80)]
y = [rng.random() * 0.8 for _ in range(80)]
w = [rng.random() * 0.2 for _ in range(80)]
h = [rng.random() * 0.2 for _ in range(80)]
out["overlap"] = sorted(map(list, _kernels.overlapping_pairs(x, y, w, h, 1e-9)))
print(json.dumps(out))
'''


def run_probe(disable):
    env = dict(os.environ, GVBP_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def test_backends_agree():
    fast, slow = run_probe(False), run_probe(True)
    assert slow["backend"] == "numpy"
    fast.pop("backend"), slow.pop("backend")
    assert fast == slow


def test_overlap_variants_agree():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(2, 60))
        x, y = rng.random(n) * 0.8, rng.random(n) * 0.8
        w, h = rng.random(n) * 0.3, rng.random(n) * 0.3
        a = sorted(map(tuple, _kernels.overlap_pairs_numpy(x, y, w, h, 1e-9)))
        b = sorted(map(tuple, _kernels.overlap_pairs_numba(x, y, w, h, 1e-9)))
        ref = sorted((i, j) for i in range(n) for j in range(i)
                     if x[i] < x[j] + w[j] - 1e-9 and x[j] < x[i] + w[i] - 1e-9
                     and y[i] < y[j] + h[j] - 1e-9 and y[j] < y[i] + h[i] - 1e-9)
        norm = lambda ps: sorted(tuple(sorted(p, reverse=True)) for p in ps)
        assert norm(a) == norm(b) == norm(ref)


def test_knapsack_bb_matches_enumeration():
    rng = np.random.default_rng(1)
    for _ in range(100):
        n = int(rng.integers(1, 11))
        vec = (rng.random((n, 2)) * 0.7).tolist()
        prof = rng.random(n).tolist()
        _, p, done = _kernels.knapsack_bb(vec, prof, 1e-9)
        best = 0.0
        for m in range(1 << n):
            take = [i for i in range(n) if m >> i & 1]
            if all(sum(vec[i][j] for i in take) <= 1 + 1e-9 for j in range(2)):
                best = max(best, sum(prof[i] for i in take))
        assert done and p == pytest.approx(best)
