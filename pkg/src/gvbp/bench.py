"""Benchmark runner: instances x algorithms x seeds -> validated CSV rows."""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional

from . import _num
from .generator import GeneratorSpec, generate_instance
from .model import Instance, instance_from_dict, load_instance, span_lower_bound, validate_packing
from .oracle import ORACLE_CAP, brute_force_opt


@dataclass
class BenchmarkRow:
    instance_id: str
    algorithm: str
    seed: int
    bin_count: Optional[int]
    span_lower_bound: int
    oracle_opt: Optional[int]
    runtime_ms: Optional[float]
    valid: bool
    error: str = ""


COLUMNS = [f.name for f in fields(BenchmarkRow)]


def _algorithms():
    from .rna import rna_pack
    from .simple import better_simple_pack, simple_pack
    from .toolkit import make_toolkit_subroutines

    return {
        "simple": lambda inst, seed: simple_pack(inst),
        "better": lambda inst, seed: better_simple_pack(inst),
        "rna": lambda inst, seed: rna_pack(inst, seed=seed),
        "rna_toolkit": lambda inst, seed: rna_pack(inst, eps=Fraction(1, 8), seed=seed,
                                                   subs=make_toolkit_subroutines()),
    }


ALGORITHMS = ("simple", "better", "rna", "rna_toolkit")


def load_instances(entries, base_seed=0) -> list:
    """Config entries are instance paths, inline instance dicts, or
    ``{"id": ..., "generate": {GeneratorSpec fields}}``."""
    out = []
    for k, e in enumerate(entries):
        if isinstance(e, str):
            out.append((e, load_instance(e), None))
        elif "generate" in e:
            spec = GeneratorSpec.from_dict(e["generate"])
            out.append((str(e.get("id", f"gen{k}")), generate_instance(spec), spec.grid))
        else:
            out.append((str(e.get("id", f"inst{k}")), instance_from_dict(e), e.get("grid")))
    return out


def run_cell(args) -> BenchmarkRow:
    iid, inst, grid, algo, seed, timing, opt = args
    lb = span_lower_bound(inst)
    try:
        fn = _algorithms()[algo]
        t0 = time.perf_counter()
        pk = fn(inst, seed)
        ms = (time.perf_counter() - t0) * 1000 if timing else None
        rep = validate_packing(inst, pk)
        return BenchmarkRow(iid, algo, seed, pk.bin_count, lb, opt, ms, rep.ok,
                            "" if rep.ok else rep.summary())
    except Exception as exc:  # one failing cell must not stop the run
        return BenchmarkRow(iid, algo, seed, None, lb, opt, None, False,
                            f"{type(exc).__name__}: {exc}")


def _oracle(inst: Instance, grid):
    if inst.n > ORACLE_CAP or not inst.exact:
        return None
    try:
        return brute_force_opt(inst, grid)[0]
    except Exception:
        return None


def run_benchmark(config: dict, workers: int = 1) -> list:
    """Rows sorted by (instance id, algorithm, seed).

    Config keys: ``instances``, ``algorithms`` (default all), ``seeds``
    (default [0]), ``oracle`` (default true: exact optimum when n <= 5),
    ``timing`` (default true; false leaves runtime_ms empty so reruns are
    byte-identical).
    """
    insts = load_instances(config.get("instances", []))
    algos = config.get("algorithms", list(ALGORITHMS))
    for a in algos:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}; choose from {ALGORITHMS}")
    seeds = config.get("seeds", [0])
    timing = config.get("timing", True)
    want_opt = config.get("oracle", True)
    cells = []
    for iid, inst, grid in insts:
        opt = _oracle(inst, grid) if want_opt else None
        for a in algos:
            for s in seeds:
                cells.append((iid, inst, grid, a, s, timing, opt))
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(run_cell, cells))
    else:
        rows = [run_cell(c) for c in cells]
    rows.sort(key=lambda r: (r.instance_id, r.algorithm, r.seed))
    return rows


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, Fraction)):
        return _num.fmt(v)
    return str(v)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_cell(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def run_benchmark_file(config_path, output_path=None, workers: int = 1) -> list:
    with open(config_path) as fh:
        config = json.load(fh)
    rows = run_benchmark(config, workers)
    text = rows_to_csv(rows)
    if output_path:
        with open(output_path, "w") as fh:
            fh.write(text)
    return rows
