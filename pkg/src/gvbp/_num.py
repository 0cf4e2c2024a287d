"""Number handling shared by every module.

Values are either ``fractions.Fraction`` (exact mode) or ``float`` (fast
mode).  Comparisons go through :func:`leq` / :func:`lt` so a single code path
serves both: the tolerance is zero for exact inputs and ``TAU`` otherwise.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[Fraction, float]

TAU = float(os.environ.get("GVBP_TAU", "1e-9"))

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_number(value) -> Number:
    """JSON scalar -> Fraction (strings, ints) or float."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return value
    raise TypeError(f"cannot interpret {value!r} as a number")


def is_exact(values: Iterable) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def tol_of(*values) -> float:
    """Tolerance to use when any of ``values`` is a float."""
    for v in values:
        if isinstance(v, float):
            return TAU
    return 0


def leq(a, b, tol=None) -> bool:
    if tol is None:
        tol = tol_of(a, b)
    return a <= b + tol


def lt(a, b, tol=None) -> bool:
    if tol is None:
        tol = tol_of(a, b)
    return a < b - tol


def ceil(x) -> int:
    """Ceiling that treats floats within TAU of an integer as that integer."""
    if isinstance(x, float):
        r = round(x)
        if abs(x - r) <= TAU:
            return int(r)
        return math.ceil(x)
    return math.ceil(x)


def floor(x) -> int:
    if isinstance(x, float):
        r = round(x)
        if abs(x - r) <= TAU:
            return int(r)
        return math.floor(x)
    return math.floor(x)


def fmt(x, digits: int = 9) -> str:
    """Rationals as ``p/q`` (or ``p``), floats with ``digits`` significant digits."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return f"{x:.{digits}g}"


def to_json(x):
    """Exact values become strings so they survive a round trip."""
    if isinstance(x, Fraction):
        return fmt(x)
    return x


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = d * v.denominator // math.gcd(d, v.denominator)
    return d
