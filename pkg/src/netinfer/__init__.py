"""netinfer: learning influencer sets from threshold opinion dynamics.

Given samples of an agent's opinion updates under an all-but-kappa or
tau-margin rule, the package recovers candidate influencer sets: exact
consistent-hypothesis finders for the all-but-kappa family, a greedy
heuristic for majority/tau-margin dynamics, a Hitting-Set reduction for
hardness experiments, plus a simulation oracle, random-graph generators and
a false-negative-rate experiment harness.
"""

from ._kernels import BACKEND
from .bruteforce import all_feasible_sets, any_feasible, min_feasible_size
from .chf import chf_allbutk, chf_allbutk_always_changing, chf_unanimity
from .core import (Example, InfluencerSet, Label, MatchingTransform, Protocol,
                   RowState, apply_protocol, influencer_set, is_feasible,
                   labelling, matching_set, matching_transform, row_margin,
                   row_margins, row_state, row_states, sample_size,
                   transform_from_arrays)
from .experiments import (ExperimentConfig, ExhaustiveReport, FnrCell,
                          fnr_csv, overall_stats, run_exhaustive_smalln,
                          run_fnr_grid)
from .graphs import GraphSpec, InfluenceGraph, derive_params, generate_graph
from .oracle import (InfeasibleSampleError, SamplerConfig, generate_labellings,
                     oracle_examples, oracle_predictions)
from .reduction import (HittingSetInstance, ReductionLayout,
                        decode_feasible_set, encode_hitting_set,
                        reduction_epsilon, solve_hitting_set)
from .waterfall import (WaterfallConfig, WaterfallResult, build_waterfall_streams,
                        filters_tiebreak, rescue_set, streams_certify_feasible,
                        waterfall)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Example", "InfluencerSet", "Label", "MatchingTransform", "Protocol",
    "RowState", "apply_protocol", "influencer_set", "is_feasible", "labelling",
    "matching_set", "matching_transform", "row_margin", "row_margins",
    "row_state", "row_states", "sample_size", "transform_from_arrays",
    "InfeasibleSampleError", "SamplerConfig", "generate_labellings",
    "oracle_examples", "oracle_predictions",
    "chf_allbutk", "chf_allbutk_always_changing", "chf_unanimity",
    "WaterfallConfig", "WaterfallResult", "build_waterfall_streams",
    "filters_tiebreak", "rescue_set", "streams_certify_feasible", "waterfall",
    "HittingSetInstance", "ReductionLayout", "decode_feasible_set",
    "encode_hitting_set", "reduction_epsilon", "solve_hitting_set",
    "all_feasible_sets", "any_feasible", "min_feasible_size",
    "GraphSpec", "InfluenceGraph", "derive_params", "generate_graph",
    "ExperimentConfig", "ExhaustiveReport", "FnrCell", "fnr_csv",
    "overall_stats", "run_exhaustive_smalln", "run_fnr_grid",
]
