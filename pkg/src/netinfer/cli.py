"""Command-line entry points.

Subcommands: simulate, infer (chf | waterfall), reduce (encode | decode),
verify brute, generate, experiment (fnr | exhaust).  The NETINFER_WORKERS
environment variable overrides the configured worker count for experiments;
NETINFER_NO_NUMBA=1 selects the pure-numpy kernel backend.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .bruteforce import DEFAULT_MAX_N, all_feasible_sets, any_feasible, \
    min_feasible_size
from .chf import chf_allbutk, chf_unanimity
from .core import MatchingTransform, Protocol, transform_from_arrays
from .experiments import (ExperimentConfig, fnr_csv, overall_stats,
                          run_exhaustive_smalln, run_fnr_grid)
from .graphs import MODELS, GraphSpec, generate_graph
from .oracle import DISTRIBUTIONS, SamplerConfig, generate_labellings, \
    oracle_predictions
from .reduction import decode_feasible_set, encode_hitting_set
from .waterfall import WaterfallConfig, waterfall


def _protocol_from_args(args) -> Protocol:
    name = args.protocol
    if name == "majority":
        return Protocol.majority()
    if name == "unanimity":
        return Protocol.unanimity()
    if name == "allbutk":
        return Protocol.all_but_k(args.kappa)
    return Protocol.tau_margin(args.tau)


def _add_protocol_args(parser, default="majority"):
    parser.add_argument("--protocol", default=default,
                        choices=["majority", "unanimity", "allbutk", "taumargin"])
    parser.add_argument("--kappa", type=int, default=0)
    parser.add_argument("--tau", type=int, default=0)


def _parse_agents(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.split(",")]


def _cmd_simulate(args) -> int:
    config = SamplerConfig(distribution=args.dist, p_agree=args.p_agree,
                           seed=args.seed)
    labels = generate_labellings(args.n, args.m, config)
    influencers = _parse_agents(args.influencers)
    protocol = _protocol_from_args(args)
    preds = oracle_predictions(influencers, protocol, labels)
    io.write_examples(args.out, labels, preds)
    if args.transform_csv:
        io.write_transform_csv(args.transform_csv,
                               transform_from_arrays(labels, preds))
    print(f"wrote {args.m} examples over {args.n} agents to {args.out}")
    return 0


def _load_transform(path) -> MatchingTransform:
    labels, changed, _ = io.read_examples(path)
    return transform_from_arrays(labels, changed)


def _cmd_infer_chf(args) -> int:
    transform = _load_transform(args.infile)
    kappa = 0 if args.protocol == "unanimity" else args.kappa
    if args.protocol == "unanimity" or (args.protocol == "allbutk"
                                        and kappa == 0 and args.unanimity_fast):
        result = chf_unanimity(transform)
    else:
        result = chf_allbutk(transform, kappa, max_size=args.max_size)
    io.write_influencers(args.out, transform.n, result)
    if result is None:
        print("no consistent influencer set exists")
        return 1
    print(f"feasible influencer set: {sorted(result)}")
    return 0


def _cmd_infer_waterfall(args) -> int:
    transform = _load_transform(args.infile)
    config = WaterfallConfig(tau=args.tau, tie_break=args.tiebreak,
                             seed=args.seed)
    result = waterfall(transform, config)
    payload = io.waterfall_result_to_dict(transform.n, result)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    if result.found:
        print(f"found influencer set: {sorted(result.influencers)} "
              f"(source={result.source}, point={result.validation_point})")
        return 0
    print("terminated without finding an influencer set "
          "(this may be a false negative)")
    return 1


def _cmd_reduce_encode(args) -> int:
    instance = io.read_instance(args.infile)
    transform, layout = encode_hitting_set(instance)
    # encodings are always-changing samples; labels are the negated entries
    labels = (-transform.entries).astype(np.int8)
    io.write_examples(args.out, labels, transform.predictions)
    layout_path = args.layout or str(args.out) + ".layout.json"
    io.write_layout(layout_path, layout)
    print(f"encoded {layout.num_sets} sets, budget {layout.budget} -> "
          f"{layout.n} agents, {layout.m_hat} examples ({args.out}, "
          f"layout {layout_path})")
    return 0


def _cmd_reduce_decode(args) -> int:
    layout = io.read_layout(args.layout)
    _, agents = io.read_influencers(args.feasible)
    if agents is None:
        print("feasible file contains no influencer set")
        return 1
    elements = decode_feasible_set(agents, layout)
    if elements is None:
        print("invalid: the set does not conform to the reduction shape "
              "(all auxiliary agents plus exactly d element agents)")
        return 1
    out = sorted(elements, key=str)
    print(json.dumps({"hitting_set": out}))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"hitting_set": out}, fh, indent=2)
            fh.write("\n")
    return 0


def _cmd_verify_brute(args) -> int:
    transform = _load_transform(args.infile)
    protocol = _protocol_from_args(args)
    if args.all:
        sets = all_feasible_sets(transform, protocol, max_n=args.max_n)
        print(json.dumps({"count": len(sets),
                          "sets": [sorted(s) for s in sets]}))
    elif args.min_size:
        size = min_feasible_size(transform, protocol, max_n=args.max_n)
        print(json.dumps({"min_size": size}))
    else:
        print(json.dumps({"any_feasible":
                          any_feasible(transform, protocol, max_n=args.max_n)}))
    return 0


def _cmd_generate(args) -> int:
    graph = generate_graph(GraphSpec(args.model, args.n, args.p, args.seed))
    io.write_graph(args.out, graph)
    print(f"wrote {args.model} graph with {graph.n} agents and "
          f"{len(graph.edges)} directed edges to {args.out}")
    return 0


def _cmd_experiment_fnr(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = ExperimentConfig.from_dict(json.load(fh))
    cells = run_fnr_grid(config)
    csv_text = fnr_csv(cells)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text)
    stats = overall_stats(cells)
    print(f"wrote {len(cells)} cells to {args.out}; "
          f"success rate {stats['success_rate']:.4f}, "
          f"mean FNR {stats['mean_fnr']:.3e}")
    return 0


def _cmd_experiment_exhaust(args) -> int:
    report = run_exhaustive_smalln(args.n, args.max_sample,
                                   tie_break=args.tiebreak, seed=args.seed,
                                   max_runs=args.max_runs)
    payload = report.to_dict()
    print(json.dumps(payload, indent=2))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if report.failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netinfer",
        description="Influencer-set inference from threshold opinion dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample labellings and oracle them")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_protocol_args(p)
    p.add_argument("--influencers", required=True,
                   help="comma-separated 0-based agent indices, e.g. 0,2,5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", default="unique", choices=list(DISTRIBUTIONS))
    p.add_argument("--p-agree", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.add_argument("--transform-csv", default=None,
                   help="also export the matching transform as CSV")
    p.set_defaults(func=_cmd_simulate)

    infer = sub.add_parser("infer", help="run a learner on an examples file")
    infer_sub = infer.add_subparsers(dest="learner", required=True)

    p = infer_sub.add_parser("chf", help="exact all-but-kappa finder")
    p.add_argument("--protocol", default="allbutk",
                   choices=["allbutk", "unanimity"])
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--unanimity-fast", action="store_true",
                   help="use the intersection finder when kappa is 0")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_infer_chf)

    p = infer_sub.add_parser("waterfall", help="greedy tau-margin heuristic")
    p.add_argument("--tau", type=int, default=0)
    p.add_argument("--tiebreak", default="random",
                   choices=["random", "filters", "first"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_infer_waterfall)

    reduce_p = sub.add_parser("reduce", help="hitting-set reduction tools")
    reduce_sub = reduce_p.add_subparsers(dest="direction", required=True)

    p = reduce_sub.add_parser("encode")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--layout", default=None)
    p.set_defaults(func=_cmd_reduce_encode)

    p = reduce_sub.add_parser("decode")
    p.add_argument("--feasible", required=True)
    p.add_argument("--layout", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_reduce_decode)

    verify = sub.add_parser("verify", help="ground-truth verification")
    verify_sub = verify.add_subparsers(dest="verifier", required=True)

    p = verify_sub.add_parser("brute", help="exhaustive subset enumeration")
    p.add_argument("--in", dest="infile", required=True)
    _add_protocol_args(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--min-size", action="store_true")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=_cmd_verify_brute)

    p = sub.add_parser("generate", help="random influence network")
    p.add_argument("--model", required=True, choices=list(MODELS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    exp = sub.add_parser("experiment", help="FNR studies")
    exp_sub = exp.add_subparsers(dest="mode", required=True)

    p = exp_sub.add_parser("fnr", help="grid study from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment_fnr)

    p = exp_sub.add_parser("exhaust", help="exhaustive small-n verification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-sample", type=int, required=True)
    p.add_argument("--tiebreak", default="random",
                   choices=["random", "filters", "first"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-runs", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_experiment_exhaust)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
