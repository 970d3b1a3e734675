import numpy as np
import pytest

from abcdgraph.errors import EmptyGraphError
from abcdgraph.graph import MultiGraph, Partition, build_abcd
from abcdgraph.modularity import (
    ground_truth_modularity,
    max_modularity_brute_force,
    modularity,
)
from abcdgraph.params import AbcdParams, validate_params


def two_triangles_with_bridge():
    u = np.array([0, 0, 1, 2, 3, 3, 4])
    v = np.array([1, 2, 2, 3, 4, 5, 5])
    return MultiGraph(n=6, u=u, v=v)


def random_multigraph(rng, max_nodes=6):
    n = int(rng.integers(2, max_nodes + 1))
    m = int(rng.integers(1, 10))
    u = rng.integers(0, n, size=m)
    v = rng.integers(0, n, size=m)
    return MultiGraph(n=n, u=np.minimum(u, v), v=np.maximum(u, v))


class TestModularity:
    def test_whole_graph_partition_scores_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(25):
            g = random_multigraph(rng)
            q = modularity(g, Partition(part_of=np.zeros(g.n, dtype=np.int64))).q
            assert q == pytest.approx(0.0, abs=1e-12)

    def test_triangle_singletons(self):
        g = MultiGraph(n=3, u=np.array([0, 0, 1]), v=np.array([1, 2, 2]))
        rep = modularity(g, Partition(part_of=np.arange(3)))
        assert rep.edge_contribution == 0.0
        assert rep.q == pytest.approx(-1.0 / 3.0, abs=1e-12)

    def test_two_triangles_bridge_value(self):
        g = two_triangles_with_bridge()
        part = Partition(part_of=np.array([0, 0, 0, 1, 1, 1]))
        rep = modularity(g, part)
        assert rep.q == pytest.approx(5.0 / 14.0, abs=1e-12)
        # and brute force confirms this is the maximum
        best_q, _ = max_modularity_brute_force(g)
        assert best_q == pytest.approx(5.0 / 14.0, abs=1e-12)

    def test_empty_graph_rejected(self):
        g = MultiGraph(n=3, u=np.array([], dtype=np.int64), v=np.array([], dtype=np.int64))
        with pytest.raises(EmptyGraphError):
            modularity(g, Partition(part_of=np.zeros(3, dtype=np.int64)))

    def test_bounds_on_random_corpus(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            g = random_multigraph(rng)
            labels = rng.integers(0, g.n, size=g.n)
            rep = modularity(g, Partition.from_labels(labels))
            assert -0.5 - 1e-12 <= rep.q <= 1.0 + 1e-12
            assert rep.q == pytest.approx(rep.edge_contribution - rep.degree_tax, abs=1e-14)

    def test_loop_conventions_keep_handshake(self):
        # One loop and one ordinary edge: vol(V) = 2|E| = 4.
        g = MultiGraph(n=2, u=np.array([0, 0]), v=np.array([0, 1]))
        assert g.volume() == 2 * g.num_edges
        rep = modularity(g, Partition(part_of=np.array([0, 1])))
        # loop sits inside part 0; the cross edge is cut
        assert rep.edge_contribution == pytest.approx(0.5)
        assert rep.degree_tax == pytest.approx((3 / 4) ** 2 + (1 / 4) ** 2)


class TestGroundTruth:
    def test_gap_uses_graph_params(self):
        p = validate_params(
            AbcdParams(n=2000, gamma=2.5, delta=5, zeta=0.5, beta=1.5, s=50, tau=0.75, xi=0.2)
        )
        g, gt, _ = build_abcd(p, seed=0)
        rep = ground_truth_modularity(g, gt)
        assert rep.prediction_gap == pytest.approx(abs(rep.q - 0.8), abs=1e-12)

    def test_large_graph_tracks_one_minus_xi(self):
        p = validate_params(
            AbcdParams(n=100_000, gamma=2.5, delta=5, zeta=0.5, beta=1.5, s=50, tau=0.75, xi=0.2)
        )
        qs = [ground_truth_modularity(*build_abcd(p, seed)[:2]).q for seed in range(5)]
        assert np.mean(qs) == pytest.approx(0.8, abs=0.03)
