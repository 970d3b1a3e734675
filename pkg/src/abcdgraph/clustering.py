"""Partition-producing algorithms and partition-similarity scores.

Louvain (two-phase local moving + aggregation), ECG (an ensemble of
level-one Louvain runs voting on edge weights, then a weighted Louvain
pass), spanning-tree dissection into volume-bounded connected parts, the
degree-1 repartition that re-homes background leaves, and ARI/AMI.
"""

import math
from dataclasses import dataclass

import numpy as np
from sklearn.metrics import adjusted_mutual_info_score, adjusted_rand_score

from .errors import EmptyGraphError, PreconditionError
from .graph import MultiGraph, Partition, components, spanning_tree
from .modularity import modularity
from .weights import WeightSplit


@dataclass(frozen=True)
class SimilarityScores:
    ari: float
    ami: float


def ari(p1: Partition, p2: Partition) -> float:
    """Adjusted Rand index (permutation-model chance correction)."""
    return float(adjusted_rand_score(p1.part_of, p2.part_of))


def ami(p1: Partition, p2: Partition) -> float:
    """Adjusted mutual information, arithmetic-mean normalization."""
    return float(adjusted_mutual_info_score(p1.part_of, p2.part_of, average_method="arithmetic"))


def similarity(p1: Partition, p2: Partition) -> SimilarityScores:
    return SimilarityScores(ari=ari(p1, p2), ami=ami(p1, p2))


# ---------------------------------------------------------------------------
# Louvain


@dataclass
class _WeightedGraph:
    """Collapsed weighted view of a multigraph; loops live in self_weight."""

    adj: list[dict[int, float]]
    strength: np.ndarray  # loops count twice, matching the degree convention
    self_weight: np.ndarray

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def total_weight(self) -> float:
        return float(self.strength.sum()) / 2.0

    @staticmethod
    def from_edges(n: int, u: np.ndarray, v: np.ndarray, weights=None) -> "_WeightedGraph":
        adj: list[dict[int, float]] = [dict() for _ in range(n)]
        self_weight = np.zeros(n, dtype=np.float64)
        for idx in range(len(u)):
            a, b = int(u[idx]), int(v[idx])
            w = 1.0 if weights is None else float(weights[idx])
            if a == b:
                self_weight[a] += w
            else:
                adj[a][b] = adj[a].get(b, 0.0) + w
                adj[b][a] = adj[b].get(a, 0.0) + w
        strength = np.array([sum(nbrs.values()) for nbrs in adj]) + 2.0 * self_weight
        return _WeightedGraph(adj=adj, strength=strength, self_weight=self_weight)


def _local_moving(wg: _WeightedGraph, rng: np.random.Generator) -> tuple[np.ndarray, bool]:
    """One Louvain phase: greedy node moves from singletons until stable.

    Moves maximize the modularity gain; equal gains go to the lowest
    community id, so runs are reproducible given the visit order.
    """
    comm = np.arange(wg.n, dtype=np.int64)
    vol = 2.0 * wg.total_weight
    if vol == 0.0:
        return comm, False
    comm_strength = wg.strength.astype(np.float64).copy()

    improved_ever = False
    nodes = np.arange(wg.n)
    while True:
        improved = False
        rng.shuffle(nodes)
        for v in nodes:
            cv = int(comm[v])
            k_v = wg.strength[v]
            links: dict[int, float] = {}
            for nbr, w in wg.adj[v].items():
                c = int(comm[nbr])
                links[c] = links.get(c, 0.0) + w
            comm_strength[cv] -= k_v
            base = links.get(cv, 0.0) - k_v * comm_strength[cv] / vol
            best_comm, best_gain = cv, 0.0
            for cand, w_to in links.items():
                if cand == cv:
                    continue
                gain = (w_to - k_v * comm_strength[cand] / vol) - base
                if gain > best_gain + 1e-12:
                    best_comm, best_gain = cand, gain
                elif best_gain > 0.0 and abs(gain - best_gain) <= 1e-12 and cand < best_comm:
                    best_comm = cand
            comm[v] = best_comm
            comm_strength[best_comm] += k_v
            if best_comm != cv:
                improved = True
        improved_ever |= improved
        if not improved:
            break
    return comm, improved_ever


def _aggregate(wg: _WeightedGraph, comm: np.ndarray) -> tuple[_WeightedGraph, np.ndarray]:
    """Contract communities to single nodes; internal weight becomes loops."""
    _, compact = np.unique(comm, return_inverse=True)
    m = int(compact.max()) + 1
    adj: list[dict[int, float]] = [dict() for _ in range(m)]
    self_weight = np.zeros(m, dtype=np.float64)
    for v in range(wg.n):
        cv = int(compact[v])
        self_weight[cv] += wg.self_weight[v]
        for nbr, w in wg.adj[v].items():
            if nbr <= v:
                continue  # visit each undirected pair once
            cn = int(compact[nbr])
            if cn == cv:
                self_weight[cv] += w
            else:
                adj[cv][cn] = adj[cv].get(cn, 0.0) + w
                adj[cn][cv] = adj[cn].get(cv, 0.0) + w
    strength = np.array([sum(nbrs.values()) for nbrs in adj]) + 2.0 * self_weight
    return _WeightedGraph(adj=adj, strength=strength, self_weight=self_weight), compact


def _louvain_full(wg: _WeightedGraph, rng: np.random.Generator) -> np.ndarray:
    mapping = np.arange(wg.n, dtype=np.int64)
    while True:
        comm, improved = _local_moving(wg, rng)
        if not improved:
            return mapping
        wg, compact = _aggregate(wg, comm)
        mapping = compact[mapping]


def _never_negative(g: MultiGraph, part: Partition) -> Partition:
    # The all-in-one partition scores exactly 0; never return worse.
    if modularity(g, part).q < 0.0:
        return Partition(part_of=np.zeros(g.n, dtype=np.int64))
    return part


def louvain(g: MultiGraph, rng: np.random.Generator) -> Partition:
    """Two-phase Louvain on the (multi)graph; the result never scores below 0."""
    if g.num_edges == 0:
        raise EmptyGraphError("louvain needs at least one edge")
    wg = _WeightedGraph.from_edges(g.n, g.u, g.v)
    labels = _louvain_full(wg, rng)
    return _never_negative(g, Partition.from_labels(labels))


def louvain_level_one(g: MultiGraph, rng: np.random.Generator) -> Partition:
    """Single local-moving pass from singletons (the ECG voting unit)."""
    if g.num_edges == 0:
        raise EmptyGraphError("louvain needs at least one edge")
    wg = _WeightedGraph.from_edges(g.n, g.u, g.v)
    comm, _ = _local_moving(wg, rng)
    return Partition.from_labels(comm)


def ecg(g: MultiGraph, k: int, rng: np.random.Generator, w_min: float = 0.05) -> Partition:
    """Ensemble clustering: k level-one votes reweight edges, then Louvain.

    Each edge's weight becomes the fraction of ensemble runs that put its
    endpoints together, floored at w_min so never-co-clustered edges keep a
    small positive weight.
    """
    if g.num_edges == 0:
        raise EmptyGraphError("ecg needs at least one edge")
    if k < 1:
        raise ValueError("ensemble size k must be at least 1")
    votes = np.zeros(g.num_edges, dtype=np.float64)
    for _ in range(k):
        lab = louvain_level_one(g, rng).part_of
        votes += lab[g.u] == lab[g.v]
    weights = np.maximum(votes / k, w_min)
    wg = _WeightedGraph.from_edges(g.n, g.u, g.v, weights)
    labels = _louvain_full(wg, rng)
    return _never_negative(g, Partition.from_labels(labels))


# ---------------------------------------------------------------------------
# Spanning-tree dissection


def tree_dissection_bound(n_prime: int, vol: float, max_degree: int) -> float:
    """Guaranteed modularity of the dissection partition:
    2*n'/vol - 3*sqrt(Delta/vol) - Delta/vol."""
    return 2.0 * n_prime / vol - 3.0 * math.sqrt(max_degree / vol) - max_degree / vol


def tree_dissect(g: MultiGraph, rng: np.random.Generator) -> Partition:
    """Partition the largest component into volume-bounded connected parts.

    A spanning tree is traversed bottom-up; each node accumulates the pending
    volume of its residual subtree and a part is cut whenever the pending
    volume reaches sqrt(Delta * vol(V)).  Leftover nodes join the last part;
    nodes outside the largest component become singletons.  The resulting
    modularity is checked against the guaranteed lower bound on every run.
    """
    if g.num_edges == 0:
        raise EmptyGraphError("tree dissection needs at least one edge")
    comps = components(g)
    giant = comps[0]
    vol = float(g.volume())
    max_degree = int(g.degree.max())
    threshold = math.sqrt(max_degree * vol)

    part_of = np.full(g.n, -1, dtype=np.int64)
    if len(giant) == 1:
        part_of[giant[0]] = 0
        next_part = 1
    else:
        tree = spanning_tree(g, giant, rng)
        parent = np.full(g.n, -1, dtype=np.int64)
        parent[tree[:, 1]] = tree[:, 0]
        # Parents precede children in the tree rows (BFS emission order).
        bfs_order = np.empty(len(giant), dtype=np.int64)
        bfs_order[1:] = tree[:, 1]
        root_mask = parent[giant] < 0
        bfs_order[0] = giant[root_mask][0]
        root = int(bfs_order[0])

        pending = g.degree.astype(np.float64).copy()
        label = np.full(g.n, -1, dtype=np.int64)
        next_part = 0
        for v in bfs_order[::-1]:
            if pending[v] >= threshold:
                label[v] = next_part
                next_part += 1
            elif parent[v] >= 0:
                pending[parent[v]] += pending[v]
        if next_part == 0:
            label[root] = 0
            next_part = 1
        elif label[root] < 0:
            label[root] = next_part - 1  # leftovers join the last part
        for v in bfs_order:
            if label[v] < 0:
                label[v] = label[parent[v]]
        part_of[giant] = label[giant]

    outside = part_of < 0
    part_of[outside] = next_part + np.arange(int(outside.sum()))
    partition = Partition(part_of=part_of)

    bound = tree_dissection_bound(len(giant), vol, max_degree)
    q = modularity(g, partition).q
    if q < bound - 1e-9:
        raise AssertionError(f"dissection modularity {q:.6f} below guarantee {bound:.6f}")
    return partition


# ---------------------------------------------------------------------------
# Degree-1 repartition


def lucky_repartition(g: MultiGraph, ground_truth: Partition, split: WeightSplit) -> Partition:
    """Move each degree-1 node whose sole edge is background into its
    neighbour's part.

    When such an edge joins two of these nodes, both take the smaller of the
    two original part ids.  Intra-community edges are never removed from
    their part, so the edge contribution cannot decrease.
    """
    if split is None:
        raise PreconditionError("lucky_repartition requires the weight split")
    lucky = (g.degree == 1) & (split.z == 1)
    return _reattach_leaves(g, ground_truth, lucky)


def lucky_repartition_by_adjacency(g: MultiGraph, ground_truth: Partition) -> Partition:
    """File-level equivalent of lucky_repartition.

    Moving a degree-1 node to its neighbour's part is a no-op unless its edge
    crosses parts, and community edges never cross, so acting on all degree-1
    nodes gives the same partition without needing the weight split.
    """
    return _reattach_leaves(g, ground_truth, g.degree == 1)


def _reattach_leaves(g: MultiGraph, ground_truth: Partition, lucky: np.ndarray) -> Partition:
    original = ground_truth.part_of
    part_of = original.copy()

    neighbour = np.full(g.n, -1, dtype=np.int64)
    mask_u = lucky[g.u] & (g.u != g.v)
    neighbour[g.u[mask_u]] = g.v[mask_u]
    mask_v = lucky[g.v] & (g.u != g.v)
    neighbour[g.v[mask_v]] = g.u[mask_v]

    movers = np.flatnonzero(lucky & (neighbour >= 0))
    nbrs = neighbour[movers]
    # A non-lucky neighbour never moves, so its original part is its final one.
    part_of[movers] = np.where(
        lucky[nbrs], np.minimum(original[movers], original[nbrs]), original[nbrs]
    )
    return Partition(part_of=part_of)
