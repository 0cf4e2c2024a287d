import json
import random
from fractions import Fraction as F

import pytest

from gvbp import (EpsilonSchedule, GeneratorSpec, Instance, Item, brute_force_opt, classify_item,
                  generate_instance, instance_to_dict, run_benchmark, simple_pack,
                  validate_packing)
from gvbp.bench import COLUMNS, rows_to_csv
from gvbp.cli import main
from gvbp.errors import InstanceTooLarge, NonGridInstance
from gvbp.svg import packing_svg

from conftest import three_rects
from oracles import grid_opt


def test_generator_examples():
    assert generate_instance(GeneratorSpec(0)).n == 0
    a = json.dumps(instance_to_dict(generate_instance(GeneratorSpec(3, grid=4, seed=7))))
    b = json.dumps(instance_to_dict(generate_instance(GeneratorSpec(3, grid=4, seed=7))))
    assert a == b
    inst = generate_instance(GeneratorSpec(3, grid=4, seed=7))
    assert inst.exact
    assert all((x * 4).denominator == 1 for it in inst for x in (it.width, it.height) + it.weights)


def test_dense_fraction_one():
    s = EpsilonSchedule.canonical(2)
    inst = generate_instance(GeneratorSpec(40, d=2, seed=1, dense_fraction=1.0))
    assert all(classify_item(it, s.eps1, s.eps2).dense for it in inst)


def test_oracle_examples():
    opt, w = brute_force_opt(three_rects(), 5)
    assert opt == 1 and validate_packing(three_rects(), w).ok
    vec = Instance(1, [Item(i, 0, 0, (F(v),)) for i, v in (("a", "0.8"), ("b", "0.4"), ("c", "0.4"))])
    opt, w = brute_force_opt(vec, 5)
    assert opt == 2 and validate_packing(vec, w).ok
    two = Instance(1, [Item("a", 0, 0, (F(1),)), Item("b", 0, 0, (F(1),))])
    assert brute_force_opt(two, 1)[0] == 2
    with pytest.raises(NonGridInstance):
        brute_force_opt(three_rects(), 3)
    with pytest.raises(InstanceTooLarge):
        brute_force_opt(generate_instance(GeneratorSpec(6, grid=4)), 4)


def test_oracle_matches_second_oracle():
    for seed in range(60):
        rng = random.Random(seed)
        K = rng.choice([2, 3, 4])
        inst = generate_instance(GeneratorSpec(rng.randint(1, 4), d=rng.randint(0, 2), seed=seed,
                                               grid=K, dense_fraction=0.2))
        opt, w = brute_force_opt(inst, K)
        assert validate_packing(inst, w).ok
        assert opt == grid_opt(inst, K), seed


def grid_config(n_instances=10, **extra):
    cfg = {"instances": [{"id": f"g{k:02d}", "generate": {"n": 4, "d": 1, "seed": k, "grid": 4}}
                         for k in range(n_instances)],
           "algorithms": ["simple", "better", "rna"], "seeds": [0], "timing": False}
    cfg.update(extra)
    return cfg


def test_benchmark_examples():
    assert rows_to_csv(run_benchmark({"instances": []})) == ",".join(COLUMNS) + "\n"
    rows = run_benchmark(grid_config())
    assert len(rows) == 30 and all(r.valid for r in rows)
    assert all(r.oracle_opt is not None and r.bin_count >= r.oracle_opt for r in rows)
    assert [(r.instance_id, r.algorithm) for r in rows] == sorted((r.instance_id, r.algorithm) for r in rows)
    assert rows_to_csv(rows) == rows_to_csv(run_benchmark(grid_config()))


def test_benchmark_records_failures():
    cfg = {"instances": [{"id": "x", "d": 1, "items": [{"id": "a", "w": "1/2", "h": "1/2", "v": ["1/2"]}]}],
           "algorithms": ["simple"], "timing": True}
    (row,) = run_benchmark(cfg)
    assert row.valid and row.runtime_ms is not None
    with pytest.raises(ValueError):
        run_benchmark({"instances": [], "algorithms": ["nope"]})


def test_benchmark_parallel_same_rows():
    cfg = grid_config(4)
    assert rows_to_csv(run_benchmark(cfg, workers=2)) == rows_to_csv(run_benchmark(cfg))


def test_cli_round_trip(tmp_path):
    inst = tmp_path / "i.json"
    assert main(["gen", "--n", "6", "--d", "1", "--grid", "4", "--profits", "--seed", "2",
                 "-o", str(inst)]) == 0
    for algo in ("simple", "better", "rna"):
        out = tmp_path / f"{algo}.json"
        assert main(["pack", "-i", str(inst), "--algo", algo, "-o", str(out),
                     "--svg", str(tmp_path / "p.svg")]) == 0
        assert json.loads(out.read_text())["valid"]
    assert main(["validate", "-i", str(inst), "--packing", str(tmp_path / "simple.json")]) == 0
    assert main(["rna", "-i", str(inst), "--subroutines", "toolkit", "-o", str(tmp_path / "t.json")]) == 0
    assert main(["lp", "-i", str(inst), "--mode", "exact", "-o", str(tmp_path / "lp.json")]) == 0
    assert json.loads((tmp_path / "lp.json").read_text())["witnesses_valid"]
    assert main(["knapsack", "-i", str(inst), "-o", str(tmp_path / "k.json")]) == 0
    assert main(["round", "-i", str(inst), "-o", str(tmp_path / "r.json")]) == 0
    assert set(json.loads((tmp_path / "r.json").read_text())) >= {"rounded", "classes", "undo"}
    small = tmp_path / "s.json"
    main(["gen", "--n", "3", "--grid", "4", "-o", str(small)])
    assert main(["oracle", "-i", str(small), "--grid", "4", "-o", str(tmp_path / "o.json")]) == 0


def test_cli_validate_failure(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"d": 1, "items": [{"id": "a", "w": "1/2", "h": "1/2", "v": ["1/2"]}]}))
    bad = tmp_path / "p.json"
    bad.write_text(json.dumps({"bin_count": 1, "placements": [{"id": "a", "bin": 0, "x": "3/4", "y": "0"}]}))
    assert main(["validate", "-i", str(inst), "--packing", str(bad), "-o", str(tmp_path / "r.json")]) == 1
    assert main(["pack", "-i", str(tmp_path / "missing.json")]) == 2


def test_cli_bench(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(grid_config(2)))
    out = tmp_path / "r.csv"
    assert main(["bench", "-i", str(cfg), "-o", str(out)]) == 0
    assert out.read_text().splitlines()[0] == ",".join(COLUMNS)


def test_svg():
    inst = three_rects()
    text = packing_svg(inst, simple_pack(inst))
    assert text.startswith("<svg") and text.count("<title>") == 3
