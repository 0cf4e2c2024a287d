"""Round-and-Approx: randomized rounding of the configuration LP followed by
pluggable round / complex_pack / unround subroutines for the residual items."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from ._num import TAU, ceil
from .config_lp import SparseLpSolution, solve_config_lp_cg
from .errors import SubroutineContractViolated
from .geometry import next_fit_1d
from .model import BinPacking, Instance, Item, Placement, span, span_total, validate_packing
from .simple import simple_pack, split_group, better_simple_pack  # noqa: F401  (re-export)


@dataclass(frozen=True)
class RoundOutput:
    rounded: Instance        # same ids as the originals it replaces
    discarded: frozenset     # ids packed separately by simple_pack
    meta: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class RnaSubroutines:
    round: Callable          # (instance, eps) -> list[RoundOutput]
    complex_pack: Callable   # (rounded instance) -> BinPacking of rounded items
    unround: Callable        # (rounded packing, rounded instance, original instance) -> BinPacking
    name: str = "custom"
    discard_slack: object = 0  # additive allowance in Span(D) <= eps Span(I) + slack


@dataclass
class RoundingTrace:
    configurations: list     # the T sampled configurations, in draw order
    packing: BinPacking      # their bins after earliest-wins de-duplication
    residual: list           # ids of items no sampled configuration covers
    beta: object
    T: int
    seed: object


def rounds_count(beta, norm) -> int:
    if beta <= 1 or norm == 0:
        return 0
    return max(0, ceil(math.log(float(beta)) * float(norm)))


def randomized_round(instance: Instance, lp: SparseLpSolution, beta, seed=0) -> RoundingTrace:
    """Draw T = ceil(ln(beta) * ||x||_1) configurations i.i.d. proportional to x."""
    if beta < 1:
        raise ValueError("beta must be at least 1")
    norm = lp.objective
    T = rounds_count(beta, norm)
    rng = np.random.default_rng(seed)
    cfgs = [c for c, _ in lp.columns]
    chosen = []
    if T and cfgs:
        p = np.array([float(x) for _, x in lp.columns])
        idx = rng.choice(len(cfgs), size=T, p=p / p.sum())
        chosen = [cfgs[k] for k in idx]
    covered = set()
    bins = []
    for cfg in chosen:
        b = [(pl.item_id, pl.x, pl.y) for pl in cfg.witness.placements
             if pl.item_id not in covered]
        covered.update(i for i, _, _ in b)
        bins.append(b)
    residual = [it.id for it in instance if it.id not in covered]
    return RoundingTrace(chosen, BinPacking.from_bins(bins), residual, beta, T, seed)


# ---- simple subroutines -----------------------------------------------------------

def simple_round(instance: Instance, eps=None) -> list:
    """Each item becomes a full-width strip of height and weights Span(i)."""
    items = []
    for it in instance:
        s = span(it)
        one = s * 0 + 1
        items.append(Item(it.id, one if s > 0 else s, s, (s,) * instance.d))
    return [RoundOutput(Instance(instance.d, tuple(items)), frozenset())]


def simple_complex_pack(rounded: Instance) -> BinPacking:
    """Next-Fit on the Span sizes; items of one bin stack vertically."""
    items = list(rounded)
    bins = []
    for g in next_fit_1d([span(it) for it in items]):
        y = rounded.zero()
        b = []
        for i in g:
            b.append((items[i].id, rounded.zero(), y))
            y = y + items[i].height
        bins.append(b)
    return BinPacking.from_bins(bins)


def simple_unround(packing: BinPacking, rounded: Instance, original: Instance) -> BinPacking:
    """Originals of each rounded bin have area and weight sums <= 1: three bins each."""
    return BinPacking.concat(split_group([original.item(p.item_id) for p in b])
                             for b in packing.bins())


SIMPLE = RnaSubroutines(simple_round, simple_complex_pack, simple_unround, "simple")


def default_beta(d: int, eps, eta: int = 3):
    """Minimiser of mu ln(beta) + gamma alpha rho / beta with gamma=3, alpha=2,
    rho=d+1 and mu = eta (1 + eps), clamped to at least 1."""
    mu = eta * (1 + float(eps))
    return max(1.0, 3 * 2 * (d + 1) / mu)


def _pack_residual(instance, residual_ids, out: RoundOutput, subs: RnaSubroutines, eps):
    res = set(residual_ids)
    total = span_total(instance)
    disc = [instance.item(i) for i in out.discarded]
    tol = 0 if instance.exact else TAU
    if span_total(disc) > eps * total + subs.discard_slack + tol:
        raise SubroutineContractViolated(
            f"{subs.name}: discarded Span exceeds eps * Span(I)")
    d_part = instance.subset(res & set(out.discarded))
    r_ids = res - set(out.discarded)
    rounded = out.rounded.subset(r_ids)
    original = instance.subset(r_ids)
    rp = subs.complex_pack(rounded)
    up = subs.unround(rp, rounded, original)
    rep = validate_packing(original, up, require_all_packed=True)
    if not rep.ok:
        raise SubroutineContractViolated(f"{subs.name}: unround output invalid: {rep.summary()}")
    return BinPacking.concat([simple_pack(d_part), up])


def rna_pack(instance: Instance, beta=None, eps=0.1, subs: RnaSubroutines = SIMPLE,
             seed=0, pricing: str = "approx", lp: Optional[SparseLpSolution] = None
             ) -> BinPacking:
    """Full pipeline: LP, randomized rounding, then the best residual packing
    over the rounding's outputs.  Diagnostics land in ``packing.meta``."""
    if instance.n == 0:
        return BinPacking([], 0, {"T": 0, "beta": beta, "lp_objective": 0})
    if lp is None:
        lp = solve_config_lp_cg(instance, pricing=pricing, eps=eps)
    eta = lp.certificate.get("eta", 1)
    if beta is None:
        beta = default_beta(instance.d, eps, eta)
    trace = randomized_round(instance, lp, beta, seed)
    best = None
    for out in subs.round(instance, eps):
        cand = _pack_residual(instance, trace.residual, out, subs, eps)
        if best is None or cand.bin_count < best.bin_count:
            best = cand
    packing = BinPacking.concat([trace.packing, best])
    packing.meta.update({"T": trace.T, "beta": beta, "lp_objective": lp.objective,
                         "lp_status": lp.status, "residual": len(trace.residual),
                         "rounding_bins": trace.packing.bin_count, "seed": seed,
                         "subroutines": subs.name})
    return packing
