"""Generalized (2-D geometric + d-D vector) bin packing: simple packers,
geometric kernels, the configuration LP, Round-and-Approx and a rounding
toolkit, with validators and a brute-force oracle."""
from .errors import *  # noqa: F401,F403
from .model import (BinPacking, Instance, Item, ItemClass, Placement, SpanStats,
                    ValidationReport, classify_item, instance_from_dict, instance_to_dict,
                    load_instance, dump_instance, packing_from_dict, packing_to_dict, span,
                    span_lower_bound, span_stats, span_total, validate_packing)
from .geometry import (Rect, decompose_empty_space, next_fit_1d, nfdh_bin, nfdh_strip,
                       steinberg_condition, steinberg_pack, steinberg_three_bins)
from .knapsack import VectorKnapsackProblem, gvbp_knapsack, vector_knapsack
from .simple import better_simple_pack, simple_pack
from .config_lp import (Configuration, SparseLpSolution, enumerate_configurations,
                        solve_config_lp_cg, solve_config_lp_exact)
from .rna import (SIMPLE, RnaSubroutines, RoundingTrace, RoundOutput, randomized_round,
                  rna_pack, simple_complex_pack, simple_round, simple_unround)
from .toolkit import (EpsilonSchedule, check_slack, coarse_partition, linear_group,
                      make_toolkit_subroutines, pack_dense_box, rem_med, split_slack,
                      toolkit_round, unround_weights, weight_round)
from .generator import GeneratorSpec, generate_instance
from .oracle import brute_force_opt
from .bench import BenchmarkRow, run_benchmark

__version__ = "0.1.0"
