"""Experiment runner: generates graphs over seeds/sweeps and writes CSVs.

Every experiment emits one tidy CSV with the fixed column order

    row,metric,x,seed,measured,predicted,n,gamma,delta,zeta,beta,s,tau,xi,variant

where ``row`` is ``data`` for per-seed measurements and ``mean``/``std`` for
the per-x summaries appended after the data (seed left empty there).  The
``x`` column holds the sweep value (n or xi) or the curve abscissa (K or a
community size).  Figures are rendered by a separate consumer of these
files; nothing here plots.
"""

import csv
import statistics
from dataclasses import dataclass

import numpy as np

from .clustering import ami, ari, ecg, lucky_repartition, tree_dissect, tree_dissection_bound
from .errors import ParseError
from .graph import build_abcd
from .modularity import ground_truth_modularity, modularity
from .pairing import rewire_union_to_simple
from .params import AbcdParams, params_from_mapping, parse_config_text
from .powerlaw import community_size_distribution, degree_distribution
from .rng import TAG_ALGO, TAG_COMMUNITIES, TAG_DEGREES, substream
from .sequences import community_sizes, degree_sequence
from .theory import (
    TheoryContext,
    predict_ground_truth_q,
    predict_lucky_improvement,
    predict_tree_bound,
    predicted_community_count,
)

CSV_COLUMNS = [
    "row", "metric", "x", "seed", "measured", "predicted",
    "n", "gamma", "delta", "zeta", "beta", "s", "tau", "xi", "variant",
]

EXPERIMENTS = (
    "degree-ccdf",
    "volume-scaling",
    "community-ccdf",
    "community-count",
    "community-volumes",
    "ground-truth-q",
    "noise-sweep",
    "clustering-table",
    "tree-bound",
    "lucky-delta1",
)


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    params: AbcdParams
    seeds: tuple[int, ...]
    output: str
    sweep_key: str | None = None  # "n" or "xi"
    sweep_values: tuple[float, ...] = ()
    simple: bool = False  # rewire to a simple graph before analysis
    ecg_ensemble: int = 16

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ParseError(f"unknown experiment {self.name!r}; choices: {EXPERIMENTS}")
        if not self.seeds:
            raise ParseError("seed list must not be empty")
        if self.sweep_key not in (None, "n", "xi"):
            raise ParseError(f"sweep must be over 'n' or 'xi', not {self.sweep_key!r}")


def load_experiment_spec(path) -> ExperimentSpec:
    """Spec file: the param keys plus name=, seeds=, output=, and optionally
    sweep=<key>:<comma list>, simple=, ecg_ensemble=."""
    with open(path, encoding="utf-8") as fh:
        values = parse_config_text(fh.read(), path=str(path))
    own = {"name", "seeds", "output", "sweep", "simple", "ecg_ensemble"}
    params = params_from_mapping({k: v for k, v in values.items() if k not in own}, path=str(path))
    for key in ("name", "seeds", "output"):
        if key not in values:
            raise ParseError(f"{path}: missing key {key!r}")
    try:
        seeds = tuple(int(s) for s in values["seeds"].split(","))
    except ValueError:
        raise ParseError(f"{path}: seeds must be a comma list of integers") from None
    sweep_key, sweep_values = None, ()
    if "sweep" in values:
        head, _, tail = values["sweep"].partition(":")
        try:
            sweep_values = tuple(float(x) for x in tail.split(","))
        except ValueError:
            raise ParseError(f"{path}: bad sweep values in {values['sweep']!r}") from None
        sweep_key = head.strip()
    return ExperimentSpec(
        name=values["name"],
        params=params,
        seeds=seeds,
        output=values["output"],
        sweep_key=sweep_key,
        sweep_values=sweep_values,
        simple=values.get("simple", "false").lower() in ("true", "1", "yes"),
        ecg_ensemble=int(values.get("ecg_ensemble", "16")),
    )


def _row(params, metric, x, seed, measured, predicted, kind="data"):
    return {
        "row": kind,
        "metric": metric,
        "x": x,
        "seed": seed,
        "measured": measured,
        "predicted": predicted,
        "n": params.n,
        "gamma": params.gamma,
        "delta": params.delta,
        "zeta": params.zeta,
        "beta": params.beta,
        "s": params.s,
        "tau": params.tau,
        "xi": params.xi,
        "variant": params.variant,
    }


def _sweep_params(spec: ExperimentSpec):
    """Yield one AbcdParams per sweep point (or the base params once)."""
    if spec.sweep_key is None:
        yield spec.params
        return
    for value in spec.sweep_values:
        if spec.sweep_key == "n":
            yield spec.params.with_updates(n=int(value))
        else:
            yield spec.params.with_updates(xi=float(value))


def _summaries(rows):
    """Append mean/std rows per (metric, x) over the data rows."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        if r["row"] == "data":
            groups.setdefault((r["metric"], r["x"], r["xi"], r["n"]), []).append(r)
    out = []
    for (metric, x, _, _), grp in groups.items():
        values = [g["measured"] for g in grp if g["measured"] is not None]
        if not values:
            continue
        base = grp[0]
        proto = {k: base[k] for k in CSV_COLUMNS if k not in ("row", "seed", "measured")}
        out.append({**proto, "row": "mean", "seed": None, "measured": statistics.fmean(values)})
        std = statistics.stdev(values) if len(values) > 1 else 0.0
        out.append({**proto, "row": "std", "seed": None, "measured": std})
    return out


def _graph_for(params, seed, spec):
    g, gt, split = build_abcd(params, seed)
    if spec.simple:
        g = rewire_union_to_simple(g, substream(seed, TAG_ALGO, 99), max_sweeps=50)
    return g, gt, split


# --------------------------------------------------------------------------
# Experiment bodies: each returns the data rows.


def _run_degree_ccdf(spec):
    rows = []
    for params in _sweep_params(spec):
        dist = degree_distribution(params)
        ks = np.arange(dist.lo, dist.hi + 1)
        theory = dist.ccdf_array(ks)
        for seed in spec.seeds:
            seq = degree_sequence(params, substream(seed, TAG_DEGREES))
            counts = np.bincount(seq.degrees, minlength=dist.hi + 1)
            tail = counts[::-1].cumsum()[::-1]  # tail[k] = # nodes of degree >= k
            empirical = tail[ks] / params.n
            sup_gap = float(np.max(np.abs(empirical - theory)))
            for k, e, t in zip(ks, empirical, theory):
                rows.append(_row(params, "degree_ccdf", int(k), seed, float(e), float(t)))
            rows.append(_row(params, "degree_ccdf_sup_gap", None, seed, sup_gap, 0.0))
    return rows


def _run_community_ccdf(spec):
    rows = []
    for params in _sweep_params(spec):
        dist = community_size_distribution(params)
        ks = np.arange(dist.lo, dist.hi + 1)
        theory = dist.ccdf_array(ks)
        for seed in spec.seeds:
            sizes = community_sizes(params, substream(seed, TAG_COMMUNITIES)).sizes
            # Sizes may exceed S by the redistribution step; clamp for the curve.
            clamped = np.minimum(sizes, dist.hi)
            counts = np.bincount(clamped, minlength=dist.hi + 1)
            tail = counts[::-1].cumsum()[::-1]
            empirical = tail[ks] / len(sizes)
            sup_gap = float(np.max(np.abs(empirical - theory)))
            for k, e, t in zip(ks, empirical, theory):
                rows.append(_row(params, "community_ccdf", int(k), seed, float(e), float(t)))
            rows.append(_row(params, "community_ccdf_sup_gap", None, seed, sup_gap, 0.0))
    return rows


def _run_volume_scaling(spec):
    rows = []
    for params in _sweep_params(spec):
        ctx = TheoryContext.from_params(params)
        for seed in spec.seeds:
            vol = degree_sequence(params, substream(seed, TAG_DEGREES)).total
            rows.append(_row(params, "volume_ratio_discrete", params.n, seed,
                             vol / (ctx.d_hat * params.n), 1.0))
            rows.append(_row(params, "volume_ratio_continuous", params.n, seed,
                             vol / (ctx.d * params.n), 1.0))
    return rows


def _run_community_count(spec):
    rows = []
    for params in _sweep_params(spec):
        pred = predicted_community_count(params)
        for seed in spec.seeds:
            ell = community_sizes(params, substream(seed, TAG_COMMUNITIES)).ell
            rows.append(_row(params, "community_count_ratio", params.n, seed, ell / pred, 1.0))
            rows.append(_row(params, "community_count", params.n, seed, float(ell), pred))
    return rows


def _run_community_volumes(spec):
    rows = []
    for params in _sweep_params(spec):
        ctx = TheoryContext.from_params(params)
        for seed in spec.seeds:
            g, gt, _ = _graph_for(params, seed, spec)
            sizes = np.bincount(gt.part_of)
            vols = np.bincount(gt.part_of, weights=g.degree.astype(np.float64))
            ratios = vols / (ctx.d_hat * sizes)
            for size, ratio in zip(sizes, ratios):
                rows.append(_row(params, "community_volume_ratio", int(size), seed,
                                 float(ratio), 1.0))
            big = sizes >= 2000
            if np.any(big):
                within = np.abs(ratios[big] - 1.0) <= 0.05
                rows.append(_row(params, "fraction_within_5pct", None, seed,
                                 float(within.mean()), 0.95))
    return rows


def _run_ground_truth_q(spec):
    rows = []
    for params in _sweep_params(spec):
        pred = predict_ground_truth_q(params)
        for seed in spec.seeds:
            g, gt, _ = _graph_for(params, seed, spec)
            rep = ground_truth_modularity(g, gt)
            x = params.n if spec.sweep_key == "n" else params.xi
            rows.append(_row(params, "q_ground_truth", x, seed, rep.q, pred))
            rows.append(_row(params, "edge_contribution", x, seed, rep.edge_contribution, pred))
            rows.append(_row(params, "degree_tax", x, seed, rep.degree_tax, 0.0))
    return rows


def _run_noise_sweep(spec):
    return _run_ground_truth_q(spec)


def _run_clustering_table(spec):
    rows = []
    for params in _sweep_params(spec):
        pred = predict_ground_truth_q(params)
        for seed in spec.seeds:
            g, gt, _ = _graph_for(params, seed, spec)
            algo = ecg(g, spec.ecg_ensemble, substream(seed, TAG_ALGO, 1))
            q_truth = ground_truth_modularity(g, gt).q
            q_algo = modularity(g, algo).q
            rows.append(_row(params, "q_ground_truth", params.xi, seed, q_truth, pred))
            rows.append(_row(params, "q_algo", params.xi, seed, q_algo, None))
            rows.append(_row(params, "ami", params.xi, seed, ami(algo, gt), None))
            rows.append(_row(params, "ari", params.xi, seed, ari(algo, gt), None))
    return rows


def _run_tree_bound(spec):
    rows = []
    for params in _sweep_params(spec):
        try:
            pred = predict_tree_bound(params)
        except Exception:
            pred = None
        for seed in spec.seeds:
            g, _, _ = _graph_for(params, seed, spec)
            part = tree_dissect(g, substream(seed, TAG_ALGO, 2))
            q = modularity(g, part).q
            from .graph import components as graph_components

            giant = graph_components(g)[0]
            bound = tree_dissection_bound(len(giant), float(g.volume()), int(g.degree.max()))
            rows.append(_row(params, "q_tree", params.xi, seed, q, pred))
            rows.append(_row(params, "guaranteed_bound", params.xi, seed, bound, None))
    return rows


def _run_lucky_delta1(spec):
    rows = []
    for params in _sweep_params(spec):
        pred = predict_lucky_improvement(params)
        for seed in spec.seeds:
            g, gt, split = _graph_for(params, seed, spec)
            q_truth = ground_truth_modularity(g, gt).q
            improved = lucky_repartition(g, gt, split)
            q_lucky = modularity(g, improved).q
            rows.append(_row(params, "q_ground_truth", params.xi, seed, q_truth,
                             predict_ground_truth_q(params)))
            rows.append(_row(params, "q_lucky", params.xi, seed, q_lucky, None))
            rows.append(_row(params, "improvement", params.xi, seed, q_lucky - q_truth, pred))
    return rows


_RUNNERS = {
    "degree-ccdf": _run_degree_ccdf,
    "volume-scaling": _run_volume_scaling,
    "community-ccdf": _run_community_ccdf,
    "community-count": _run_community_count,
    "community-volumes": _run_community_volumes,
    "ground-truth-q": _run_ground_truth_q,
    "noise-sweep": _run_noise_sweep,
    "clustering-table": _run_clustering_table,
    "tree-bound": _run_tree_bound,
    "lucky-delta1": _run_lucky_delta1,
}


def run_experiment(spec: ExperimentSpec) -> list[dict]:
    """Run the experiment, write its CSV, and return all rows."""
    rows = _RUNNERS[spec.name](spec)
    rows = rows + _summaries(rows)
    write_rows(spec.output, rows)
    return rows


def write_rows(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in rows:
            writer.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in CSV_COLUMNS})
