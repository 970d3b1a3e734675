"""Command-line interface.

Subcommands: ``generate`` (graph + ground truth files), ``modularity``
(scores a partition file), ``partition`` (runs an algorithm over an edge
file), ``theory`` (prints closed-form constants), and ``experiment`` (runs a
spec file into a CSV).  Exit codes: 0 success, 1 runtime failure, 2 usage
error.
"""

import argparse
import sys

from . import theory as theory_mod
from .clustering import ecg, louvain, lucky_repartition_by_adjacency, tree_dissect
from .errors import AbcdError
from .graph import build_abcd, read_graph, write_graph
from .harness import load_experiment_spec, run_experiment
from .modularity import modularity
from .pairing import rewire_union_to_simple
from .params import load_config
from .rng import TAG_ALGO, TAG_SWITCH, substream


def _cmd_generate(args) -> int:
    params = load_config(args.config)
    g, gt, _ = build_abcd(params, args.seed, workers=args.workers)
    if args.simple:
        g = rewire_union_to_simple(g, substream(args.seed, TAG_SWITCH), max_sweeps=args.max_sweeps)
    write_graph(g, gt, args.out_edges, args.out_communities)
    print(f"wrote {g.num_edges} edges over {g.n} nodes, {gt.num_parts} communities", file=sys.stderr)
    return 0


def _cmd_modularity(args) -> int:
    g, partition = read_graph(args.edges, args.partition)
    rep = modularity(g, partition)
    print(f"{rep.edge_contribution:.10f}\t{rep.degree_tax:.10f}\t{rep.q:.10f}")
    return 0


def _cmd_partition(args) -> int:
    g, communities = read_graph(args.edges, args.communities)
    rng = substream(args.seed, TAG_ALGO)
    if args.algo == "louvain":
        part = louvain(g, rng)
    elif args.algo == "ecg":
        part = ecg(g, args.ensemble, rng)
    elif args.algo == "tree":
        part = tree_dissect(g, rng)
    else:  # lucky
        if communities is None:
            raise AbcdError("--algo lucky requires --communities (the ground truth)")
        part = lucky_repartition_by_adjacency(g, communities)
    with open(args.out, "w", encoding="utf-8") as fh:
        for node, pid in enumerate(part.part_of):
            fh.write(f"{node + 1}\t{pid + 1}\n")
    rep = modularity(g, part)
    print(f"{rep.edge_contribution:.10f}\t{rep.degree_tax:.10f}\t{rep.q:.10f}", file=sys.stderr)
    return 0


def _cmd_theory(args) -> int:
    params = load_config(args.config)
    name = args.name
    if name == "xi0":
        value, a, b = theory_mod.xi0(params.delta)
        print(f"xi0\t{value:.10f}")
        print(f"a\t{a}")
        print(f"b\t{b}")
        return 0
    if name == "background-pmf":
        for k, u in theory_mod.background_pmf(params).items():
            print(f"u_{k}\t{u:.12f}")
        return 0
    ctx = theory_mod.TheoryContext.from_params(params)
    scalars = {
        "d": ctx.d,
        "d-hat": ctx.d_hat,
        "c-hat": ctx.c_hat,
        "ell-pred": ctx.ell_pred,
        "ground-truth-q": lambda: theory_mod.predict_ground_truth_q(params),
        "tree-bound": lambda: theory_mod.predict_tree_bound(params),
        "lucky-improvement": lambda: theory_mod.predict_lucky_improvement(params),
    }
    if name not in scalars:
        raise AbcdError(f"unknown constant {name!r}; choices: {sorted(scalars) + ['xi0', 'background-pmf']}")
    value = scalars[name]
    if callable(value):
        value = value()
    print(f"{name}\t{value:.10f}")
    return 0


def _cmd_experiment(args) -> int:
    spec = load_experiment_spec(args.spec)
    rows = run_experiment(spec)
    print(f"wrote {len(rows)} rows to {spec.output}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcd",
        description="Community-structured random graph generator and modularity toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a graph and its ground truth")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-edges", required=True)
    p.add_argument("--out-communities", required=True)
    p.add_argument("--simple", action="store_true", help="switch edges until the graph is simple")
    p.add_argument("--max-sweeps", type=int, default=50)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("modularity", help="score a partition file against an edge file")
    p.add_argument("--edges", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(fn=_cmd_modularity)

    p = sub.add_parser("partition", help="run a partitioning algorithm on an edge file")
    p.add_argument("--algo", required=True, choices=["louvain", "ecg", "tree", "lucky"])
    p.add_argument("--edges", required=True)
    p.add_argument("--communities", help="ground-truth file (required for lucky)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--ensemble", type=int, default=16, help="ECG ensemble size")
    p.set_defaults(fn=_cmd_partition)

    p = sub.add_parser("theory", help="print closed-form constants")
    p.add_argument("--name", required=True)
    p.add_argument("--config", required=True)
    p.set_defaults(fn=_cmd_theory)

    p = sub.add_parser("experiment", help="run an experiment spec into a CSV")
    p.add_argument("--spec", required=True)
    p.set_defaults(fn=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (AbcdError, AssertionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
