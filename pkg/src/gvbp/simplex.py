"""Dense tableau simplex for  max c.y  s.t.  G y <= b,  y >= 0  with b >= 0.

The all-slack basis is feasible, so no phase one is needed.  Bland's rule
(lowest eligible index for both entering and leaving variable) rules out
cycling.  Entries may be ``Fraction`` (exact) or ``float``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

PIVOT_EPS = 1e-12


@dataclass
class SimplexResult:
    y: list  # primal solution
    x: list  # dual prices of the rows, x >= 0, G^T x >= c at optimum
    value: object
    iterations: int


class Unbounded(Exception):
    pass


def simplex_max(G, b, c, exact: bool, max_iter: int = 100_000) -> SimplexResult:
    m = len(G)
    n = len(c)
    dt = object if exact else np.float64
    conv = Fraction if exact else float
    eps = 0 if exact else PIVOT_EPS
    T = np.zeros((m + 1, n + m + 1), dtype=dt)
    if exact:
        T[:, :] = Fraction(0)
    for i, row in enumerate(G):
        for j, v in enumerate(row):
            T[i, j] = conv(v)
        T[i, n + i] = conv(1)
        T[i, -1] = conv(b[i])
    for j in range(n):
        T[m, j] = conv(c[j])  # reduced costs of the nonbasic variables
    basis = list(range(n, n + m))
    it = 0
    while True:
        enter = -1
        for j in range(n + m):
            if T[m, j] > eps:
                enter = j
                break
        if enter < 0:
            break
        if it >= max_iter:
            raise RuntimeError("simplex iteration limit")
        col = T[:m, enter]
        leave = -1
        best = None
        for i in range(m):
            if col[i] > eps:
                ratio = T[i, -1] / col[i]
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best, leave = ratio, i
        if leave < 0:
            raise Unbounded("objective unbounded")
        T[leave] = T[leave] / T[leave, enter]
        factors = T[:, enter].copy()
        factors[leave] = 0
        T -= np.outer(factors, T[leave])
        basis[leave] = enter
        it += 1
    y = [conv(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            y[bv] = T[i, -1]
    x = [-T[m, n + i] for i in range(m)]
    if not exact:
        x = [max(float(v), 0.0) for v in x]
        y = [max(float(v), 0.0) for v in y]
    value = sum((conv(c[j]) * y[j] for j in range(n)), conv(0))
    return SimplexResult(y, x, value, it)
