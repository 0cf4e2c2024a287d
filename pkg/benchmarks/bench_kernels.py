"""Time the compiled kernels against the plain numpy path.

Each backend runs in its own interpreter because the choice is made at import
time (GVBP_DISABLE_NUMBA=1 selects numpy).  Compilation happens in a warm-up
call that is not timed.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r'''
import json, sys, time
import numpy as np
from gvbp import _kernels

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
n = 1500
x, y = rng.random(n) * 0.95, rng.random(n) * 0.95
w, h = rng.random(n) * 0.05, rng.random(n) * 0.05
sizes = rng.random(200_000).tolist()
ws = rng.random(20_000).tolist()
hs = sorted(rng.random(20_000).tolist(), reverse=True)
kv = (rng.random((24, 3)) * 0.3).tolist()
kp = rng.random(24).tolist()

cases = {
    "overlap_pairs (n=1500)": lambda: _kernels.overlapping_pairs(x, y, w, h, 1e-9),
    "next_fit (n=200k)": lambda: _kernels.next_fit_labels(sizes, 1e-9),
    "nfdh shelves (n=20k)": lambda: _kernels.nfdh_positions(ws, hs, 1.0, 1e-9),
    "knapsack b&b (n=24, D=3)": lambda: _kernels.knapsack_bb(kv, kp, 1e-9),
}
out = {"backend": _kernels.backend(), "times": {}}
for name, fn in cases.items():
    fn()  # warm-up, includes JIT compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
'''


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, GVBP_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'kernel':28s} {slow['backend']:>10s} {fast['backend']:>10s} {'speedup':>8s}")
    for name, t_slow in slow["times"].items():
        t_fast = fast["times"][name]
        print(f"{name:28s} {t_slow * 1e3:9.2f}ms {t_fast * 1e3:9.2f}ms {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
