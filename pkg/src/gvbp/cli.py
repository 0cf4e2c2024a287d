"""Command line entry point: ``gvbp <subcommand> --input ... --output ...``.

Exit status is 0 iff every packing produced (or checked) is valid.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import _num
from .errors import GvbpError
from .model import (load_instance, packing_from_dict, packing_to_dict, span_stats,
                    validate_packing, instance_to_dict)


def _emit(obj, path):
    text = json.dumps(obj, indent=1, default=_num.to_json) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _number(s):
    return _num.parse_number(s)


def _report(instance, packing, extra=None):
    rep = validate_packing(instance, packing)
    out = packing_to_dict(packing)
    out["valid"] = rep.ok
    if not rep.ok:
        out["violations"] = rep.summary()
    out["span_lower_bound"] = span_stats(instance).lower_bound_bins
    if extra:
        out.update(extra)
    return out, rep.ok


def _svg(args, inst, pk):
    if getattr(args, "svg", None):
        from .svg import write_svg
        write_svg(inst, pk, args.svg)


def cmd_gen(args):
    from .generator import GeneratorSpec, generate_instance
    spec = GeneratorSpec(n=args.n, d=args.d, seed=args.seed, grid=args.grid,
                         dense_fraction=args.dense, profits=args.profits)
    _emit(instance_to_dict(generate_instance(spec)), args.output)
    return 0


def _run_rna(inst, args, subs_name):
    from .rna import rna_pack
    from .toolkit import make_toolkit_subroutines
    from .rna import SIMPLE
    subs = make_toolkit_subroutines() if subs_name == "toolkit" else SIMPLE
    eps = args.eps if args.eps is not None else (Fraction(1, 8) if subs_name == "toolkit" else 0.1)
    return rna_pack(inst, beta=args.beta, eps=eps, subs=subs, seed=args.seed)


def cmd_pack(args):
    from .simple import better_simple_pack, simple_pack
    inst = load_instance(args.input)
    if args.algo == "simple":
        pk = simple_pack(inst)
    elif args.algo == "better":
        pk = better_simple_pack(inst)
    else:
        pk = _run_rna(inst, args, "simple")
    out, ok = _report(inst, pk, {"algorithm": args.algo})
    _svg(args, inst, pk)
    _emit(out, args.output)
    return 0 if ok else 1


def cmd_rna(args):
    inst = load_instance(args.input)
    pk = _run_rna(inst, args, args.subroutines)
    meta = {k: v for k, v in pk.meta.items() if k != "orientation"}
    out, ok = _report(inst, pk, {"meta": meta})
    _svg(args, inst, pk)
    _emit(out, args.output)
    return 0 if ok else 1


def cmd_lp(args):
    from .config_lp import solve_config_lp_cg, solve_config_lp_exact
    inst = load_instance(args.input)
    if args.mode == "exact":
        sol = solve_config_lp_exact(inst)
    else:
        sol = solve_config_lp_cg(inst, pricing=args.pricing,
                                 eps=args.eps if args.eps is not None else 0.1)
    ok = all(validate_packing(inst.subset(c.item_ids), c.witness).ok for c, _ in sol.columns)
    _emit({"objective": sol.objective, "lower_bound": sol.lower_bound, "status": sol.status,
           "iterations": sol.iterations, "certificate": sol.certificate,
           "columns": [{"items": sorted(c.item_ids), "coefficient": x} for c, x in sol.columns],
           "witnesses_valid": ok}, args.output)
    return 0 if ok else 1


def cmd_knapsack(args):
    from .knapsack import gvbp_knapsack
    inst = load_instance(args.input)
    ids, pk = gvbp_knapsack(inst, mode=args.mode, eps=args.eps)
    profit = sum((inst.item(i).profit or 0 for i in ids), 0)
    sub = inst.subset(ids)
    rep = validate_packing(sub, pk)
    out = packing_to_dict(pk)
    out.update({"items": ids, "profit": profit, "valid": rep.ok})
    _emit(out, args.output)
    return 0 if rep.ok else 1


def cmd_round(args):
    from .toolkit import toolkit_round
    inst = load_instance(args.input)
    ro = toolkit_round(inst, args.eps if args.eps is not None else Fraction(1, 8))[0]
    wr, sched = ro.meta["rounding"], ro.meta["schedule"]
    classes = [{"group": key[0], "signature": list(key[1]), "sides": list(key[2]),
                "items": ids} for key, ids in ro.meta["classes"].items()]
    _emit({"schedule": {"eps": sched.eps, "eps1": sched.eps1, "eps2": sched.eps2,
                        "window": sched.index},
           "discarded": sorted(ro.discarded),
           "rounded": instance_to_dict(ro.rounded),
           "item_classes": {i: {"shape": c.shape, "dense": c.dense, "heavy": c.heavy}
                            for i, c in wr.classes.items()},
           "classes": classes,
           "undo": instance_to_dict(type(inst)(inst.d, tuple(wr.undo.values())))},
          args.output)
    return 0


def cmd_validate(args):
    inst = load_instance(args.input)
    with open(args.packing) as fh:
        pk = packing_from_dict(json.load(fh))
    rep = validate_packing(inst, pk, require_all_packed=not args.partial)
    _emit({"valid": rep.ok, "violations": [
        {"kind": v.kind, "detail": v.detail, "items": list(v.items), "bin": v.bin_index}
        for v in rep.violations]}, args.output)
    return 0 if rep.ok else 1


def cmd_oracle(args):
    from .oracle import brute_force_opt
    inst = load_instance(args.input)
    opt, pk = brute_force_opt(inst, args.grid, args.cap)
    out, ok = _report(inst, pk, {"opt": opt})
    _emit(out, args.output)
    return 0 if ok else 1


def cmd_bench(args):
    from .bench import rows_to_csv, run_benchmark
    with open(args.input) as fh:
        config = json.load(fh)
    if args.seed is not None:
        config["seeds"] = [args.seed]
    rows = run_benchmark(config, args.workers)
    text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.valid for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gvbp", description="(2, d) bin packing solvers and checks")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_, seed_default=0):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", "-i")
        sp.add_argument("--output", "-o")
        sp.add_argument("--seed", type=int, default=seed_default)
        sp.set_defaults(fn=fn)
        return sp

    g = add("gen", cmd_gen, "generate a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--grid", type=int, help="exact instance on the 1/K grid")
    g.add_argument("--dense", type=float, default=0.0, help="share of zero-area items")
    g.add_argument("--profits", action="store_true")

    for name, fn, h in (("pack", cmd_pack, "pack an instance"),
                        ("rna", cmd_rna, "Round-and-Approx packing")):
        sp = add(name, fn, h)
        sp.add_argument("--beta", type=float)
        sp.add_argument("--eps", type=_number)
        sp.add_argument("--svg", help="also write an SVG picture")
        if name == "pack":
            sp.add_argument("--algo", choices=("simple", "better", "rna"), default="simple")
        else:
            sp.add_argument("--subroutines", choices=("simple", "toolkit"), default="simple")

    sp = add("lp", cmd_lp, "solve the configuration LP")
    sp.add_argument("--mode", choices=("exact", "cg"), default="cg")
    sp.add_argument("--pricing", choices=("exact", "approx"), default="approx")
    sp.add_argument("--eps", type=_number)

    sp = add("knapsack", cmd_knapsack, "most profitable single bin (items need 'p')")
    sp.add_argument("--mode", choices=("exact", "approx"), default="exact")
    sp.add_argument("--eps", type=_number)

    sp = add("round", cmd_round, "medium removal and weight rounding")
    sp.add_argument("--eps", type=_number)

    sp = add("validate", cmd_validate, "check a packing against an instance")
    sp.add_argument("--packing", required=True)
    sp.add_argument("--partial", action="store_true", help="allow unpacked items")

    sp = add("oracle", cmd_oracle, "exact optimum for n <= 5")
    sp.add_argument("--grid", type=int)
    sp.add_argument("--cap", type=int, default=5)

    sp = add("bench", cmd_bench, "run a benchmark config (JSON) to CSV", seed_default=None)
    sp.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd != "gen" and not args.input:
        print(f"gvbp {args.cmd}: --input is required", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (GvbpError, OSError, ValueError) as exc:
        print(f"gvbp {args.cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
