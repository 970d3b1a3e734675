"""Multigraph type, full generator pipeline, components, trees, and I/O.

The final graph is the edge union of one configuration-model graph per
community (on the community degrees y, restricted to its members) and a
single background graph on all nodes (on the background degrees z).  Each of
the ell+1 subgraphs draws from its own random substream keyed by
(seed, TAG_GRAPH, index), so they can be generated in parallel and the
result is identical for any worker count.

Nodes are 0-based internally; files use 1-based ids.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .assignment import assign
from .errors import NotConnectedError, ParseError
from .params import AbcdParams
from .rng import (
    TAG_ASSIGNMENT,
    TAG_COMMUNITIES,
    TAG_DEGREES,
    TAG_GRAPH,
    TAG_WEIGHTS,
    substream,
)
from .sequences import community_sizes, degree_sequence
from .weights import WeightSplit, split_weights

BACKGROUND = 0  # provenance label of the background graph


@dataclass
class MultiGraph:
    """Undirected multigraph with loops, stored as parallel endpoint arrays.

    Edges satisfy u[i] <= v[i]; parallel edges are repeated rows; a loop is a
    row with u == v and contributes 2 to its node's degree.  ``provenance``
    labels each edge with its source subgraph (0 = background, j >= 1 =
    community j) when the graph came out of the generator.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    provenance: np.ndarray | None = None
    params: AbcdParams | None = None
    _degree: np.ndarray | None = field(default=None, repr=False)

    @property
    def num_edges(self) -> int:
        return len(self.u)

    @property
    def degree(self) -> np.ndarray:
        if self._degree is None:
            both = np.concatenate([self.u, self.v])
            self._degree = np.bincount(both, minlength=self.n)
        return self._degree

    @property
    def num_loops(self) -> int:
        return int(np.count_nonzero(self.u == self.v))

    def volume(self, nodes=None) -> int:
        """Sum of degrees over ``nodes`` (all nodes when omitted)."""
        if nodes is None:
            return 2 * self.num_edges
        nodes = np.asarray(nodes, dtype=np.int64)
        return int(self.degree[nodes].sum())

    def adjacency(self) -> sp.csr_matrix:
        """Binary structure matrix (loops dropped), for traversals."""
        keep = self.u != self.v
        uu, vv = self.u[keep], self.v[keep]
        data = np.ones(2 * len(uu), dtype=np.int8)
        rows = np.concatenate([uu, vv])
        cols = np.concatenate([vv, uu])
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


@dataclass
class Partition:
    """Node -> part id map; part ids are 0-based and contiguous."""

    part_of: np.ndarray

    @property
    def n(self) -> int:
        return len(self.part_of)

    @property
    def num_parts(self) -> int:
        return int(self.part_of.max()) + 1 if len(self.part_of) else 0

    def parts(self) -> list[np.ndarray]:
        order = np.argsort(self.part_of, kind="stable")
        ids, starts = np.unique(self.part_of[order], return_index=True)
        return list(np.split(order, starts[1:]))

    @staticmethod
    def from_labels(labels) -> "Partition":
        """Relabel arbitrary part labels to contiguous 0-based ids."""
        labels = np.asarray(labels)
        _, compact = np.unique(labels, return_inverse=True)
        return Partition(part_of=compact.astype(np.int64))


def _community_edges(members, weights, seed, index):
    from .pairing import pair_points

    rng = substream(seed, TAG_GRAPH, index)
    a, b = pair_points(weights, rng)
    return members[a], members[b]


def generate_community_edges(
    member_lists: list[np.ndarray],
    community_degrees: np.ndarray,
    seed: int,
    workers: int = 1,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair up every community graph, optionally across worker threads.

    Community j always uses substream (seed, TAG_GRAPH, j+1), so the edge
    multiset is identical for any worker count and any scheduling order.
    Threads profit because the pairing is dominated by GIL-releasing numpy
    kernels (uniform fills and sorts).
    """
    ell = len(member_lists)

    def run_range(lo: int, hi: int) -> list[tuple[np.ndarray, np.ndarray]]:
        return [
            _community_edges(member_lists[j], community_degrees[member_lists[j]], seed, j + 1)
            for j in range(lo, hi)
        ]

    if workers <= 1 or ell <= 1:
        return run_range(0, ell)
    bounds = np.linspace(0, ell, min(workers * 4, ell) + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(lambda se: run_range(*se), zip(bounds[:-1], bounds[1:])))
    return [edges for chunk in chunks for edges in chunk]


def build_abcd(
    params: AbcdParams, seed: int, workers: int = 1
) -> tuple[MultiGraph, Partition, WeightSplit]:
    """Run the full pipeline and return (graph, ground truth, weight split).

    Stages: degree sequence, community sizes, admissible assignment, weight
    split, then one pairing per community plus the background pairing.  The
    edge multiset is sorted canonically (u, then v, then provenance) so the
    output is bit-identical for any ``workers`` value.
    """
    degrees = degree_sequence(params, substream(seed, TAG_DEGREES))
    sizes = community_sizes(params, substream(seed, TAG_COMMUNITIES))
    asn = assign(degrees, sizes, params.xi, substream(seed, TAG_ASSIGNMENT))
    split = split_weights(degrees, asn, params.xi, substream(seed, TAG_WEIGHTS))

    member_lists = _members_by_community(asn.community_of, sizes.ell)
    results = generate_community_edges(member_lists, split.y, seed, workers)

    from .pairing import pair_points

    bg_u, bg_v = pair_points(split.z, substream(seed, TAG_GRAPH, BACKGROUND))

    u = np.concatenate([bg_u] + [r[0] for r in results])
    v = np.concatenate([bg_v] + [r[1] for r in results])
    prov = np.concatenate(
        [np.zeros(len(bg_u), dtype=np.int32)]
        + [np.full(len(r[0]), j + 1, dtype=np.int32) for j, r in enumerate(results)]
    )
    order = np.lexsort((prov, v, u))
    g = MultiGraph(n=params.n, u=u[order], v=v[order], provenance=prov[order], params=params)
    return g, Partition(part_of=asn.community_of.copy()), split


def _members_by_community(community_of: np.ndarray, ell: int) -> list[np.ndarray]:
    order = np.argsort(community_of, kind="stable")
    bounds = np.searchsorted(community_of[order], np.arange(ell + 1))
    return [order[bounds[j] : bounds[j + 1]] for j in range(ell)]


def background_subgraph(g: MultiGraph) -> MultiGraph:
    """The edges with background provenance, as their own multigraph."""
    if g.provenance is None:
        raise ParseError("graph carries no provenance labels")
    keep = g.provenance == BACKGROUND
    return MultiGraph(n=g.n, u=g.u[keep], v=g.v[keep], params=g.params)


def volume(g: MultiGraph, nodes=None) -> int:
    return g.volume(nodes)


def components(g: MultiGraph) -> list[np.ndarray]:
    """Connected components (loops ignored), largest first."""
    ncomp, labels = connected_components(g.adjacency(), directed=False)
    comps = [np.flatnonzero(labels == c) for c in range(ncomp)]
    comps.sort(key=len, reverse=True)
    return comps


def spanning_tree(
    g: MultiGraph, component: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """BFS spanning tree of a connected node set, rooted at a random node.

    The tree lives in the subgraph induced by ``component``.  Returns an
    array of (parent, child) rows with ``len(component) - 1`` edges; raises
    NotConnectedError when the induced subgraph is not connected.
    """
    component = np.asarray(component, dtype=np.int64)
    local = np.full(g.n, -1, dtype=np.int64)
    local[component] = np.arange(len(component))
    keep = (local[g.u] >= 0) & (local[g.v] >= 0) & (g.u != g.v)
    uu, vv = local[g.u[keep]], local[g.v[keep]]
    data = np.ones(2 * len(uu), dtype=np.int8)
    adj = sp.csr_matrix(
        (data, (np.concatenate([uu, vv]), np.concatenate([vv, uu]))),
        shape=(len(component), len(component)),
    )
    root = int(rng.integers(len(component)))
    order, pred = breadth_first_order(
        adj, i_start=root, directed=False, return_predecessors=True
    )
    if len(order) != len(component):
        raise NotConnectedError("node set is not connected")
    children = order[order != root]
    return np.column_stack([component[pred[children]], component[children]])


def write_graph(g: MultiGraph, partition: Partition, edges_path, communities_path) -> None:
    """Write the edge and community files (tab separated, 1-based ids).

    Edge file: one line per edge copy, ``u<TAB>v`` with u <= v; loops appear
    as ``u<TAB>u``.  Community file: one line per node, ``node<TAB>part``.
    """
    with open(edges_path, "w", encoding="utf-8") as fh:
        for a, b in zip(g.u, g.v):
            fh.write(f"{a + 1}\t{b + 1}\n")
    with open(communities_path, "w", encoding="utf-8") as fh:
        for node, part in enumerate(partition.part_of):
            fh.write(f"{node + 1}\t{part + 1}\n")


def read_graph(edges_path, communities_path=None) -> tuple[MultiGraph, Partition | None]:
    """Read files written by write_graph; inverse on (edge multiset, partition)."""
    us, vs = [], []
    with open(edges_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                a, b = map(int, line.split("\t"))
            except ValueError:
                raise ParseError(f"{edges_path}: bad edge line {raw!r}", line=lineno) from None
            us.append(min(a, b) - 1)
            vs.append(max(a, b) - 1)
    u = np.array(us, dtype=np.int64)
    v = np.array(vs, dtype=np.int64)

    partition = None
    n = int(v.max()) + 1 if len(v) else 0
    if communities_path is not None:
        pairs = {}
        with open(communities_path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    node, part = map(int, line.split("\t"))
                except ValueError:
                    raise ParseError(
                        f"{communities_path}: bad community line {raw!r}", line=lineno
                    ) from None
                pairs[node - 1] = part - 1
        n = max(n, max(pairs) + 1)
        part_of = np.zeros(n, dtype=np.int64)
        for node, part in pairs.items():
            part_of[node] = part
        partition = Partition(part_of=part_of)

    order = np.lexsort((v, u))
    return MultiGraph(n=n, u=u[order], v=v[order]), partition
