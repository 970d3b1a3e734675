"""Configuration (pairing) model and conflict-reducing edge switching.

A graph with a prescribed degree sequence is built by creating deg(v) points
per node, drawing a uniformly random perfect matching on the points, and
contracting points back to their nodes.  Permuting the point array and
pairing consecutive entries realizes a uniform matching.

The result may contain loops and parallel edges.  ``rewire_to_simple``
removes them by degree-preserving switches that are only accepted when they
strictly reduce the number of conflicting edge slots.
"""

from collections import Counter

import numpy as np

from .errors import NotSimpleError, ParityError, PreconditionError


def pair_points(weights: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Uniform random pairing, returned as endpoint arrays with u <= v.

    ``weights[i]`` is the number of points in bucket i; bucket indices are the
    node labels of the output.
    """
    weights = np.asarray(weights, dtype=np.int64)
    if np.any(weights < 0):
        raise ValueError("weights must be non-negative")
    total = int(weights.sum())
    if total % 2 != 0:
        raise ParityError(f"total weight {total} is odd; no perfect matching exists")
    points = np.repeat(np.arange(len(weights), dtype=np.int64), weights)
    # Sorting by i.i.d. uniform keys is a uniformly random permutation and,
    # unlike Generator.shuffle, runs outside the GIL, so community graphs
    # can be paired in parallel threads.
    shuffled = points[np.argsort(rng.random(total))]
    a, b = shuffled[0::2], shuffled[1::2]
    return np.minimum(a, b), np.maximum(a, b)


def configuration_model(weights: np.ndarray, rng: np.random.Generator):
    """Multigraph with deg(v) = weights[v] exactly (a loop contributes 2)."""
    from .graph import MultiGraph

    u, v = pair_points(weights, rng)
    return MultiGraph(n=len(np.asarray(weights)), u=u, v=v)


def _badness(counts: Counter) -> int:
    """Number of conflicting edge slots: every loop plus every duplicate copy."""
    bad = 0
    for (a, b), m in counts.items():
        if a == b:
            bad += m
        elif m > 1:
            bad += m - 1
    return bad


def rewire_to_simple(g, rng: np.random.Generator, max_sweeps: int = 20):
    """Switch endpoints until the graph is simple, preserving all degrees.

    Each sweep visits the currently conflicting edges (loops and duplicate
    copies); for each, a uniformly random partner edge is drawn and the switch
    (a,b),(c,d) -> (a,c),(b,d) is applied only when it strictly reduces the
    conflict count.  Raises NotSimpleError when max_sweeps pass without
    reaching a simple graph.  Provenance is dropped: switches mix edges from
    different source subgraphs.
    """
    from .graph import MultiGraph

    edges = [(int(a), int(b)) for a, b in zip(g.u, g.v)]
    counts = Counter(edges)
    bad = _badness(counts)

    def conflict_delta(removed: list, added: list) -> int:
        # Change in badness if `removed` edges are deleted and `added` created.
        delta = 0
        work = Counter()
        for e in removed:
            work[e] -= 1
        for e in added:
            work[e] += 1
        for (a, b), dm in work.items():
            if dm == 0:
                continue
            m0 = counts[(a, b)]
            m1 = m0 + dm
            cost0 = m0 if a == b else max(m0 - 1, 0)
            cost1 = m1 if a == b else max(m1 - 1, 0)
            delta += cost1 - cost0
        return delta

    for _ in range(max_sweeps):
        if bad == 0:
            break
        conflicted = [
            i
            for i, e in enumerate(edges)
            if e[0] == e[1] or counts[e] > 1
        ]
        rng.shuffle(conflicted)
        for i in conflicted:
            a, b = edges[i]
            if a != b and counts[(a, b)] <= 1:
                continue  # resolved earlier in this sweep
            j = int(rng.integers(len(edges)))
            if j == i:
                continue
            c, d = edges[j]
            if rng.random() < 0.5:
                c, d = d, c
            new1 = (a, c) if a <= c else (c, a)
            new2 = (b, d) if b <= d else (d, b)
            delta = conflict_delta([edges[i], edges[j]], [new1, new2])
            if delta < 0:
                counts[edges[i]] -= 1
                counts[edges[j]] -= 1
                counts[new1] += 1
                counts[new2] += 1
                edges[i] = new1
                edges[j] = new2
                bad += delta
    if bad > 0:
        raise NotSimpleError(f"{bad} conflicting edge slots remain after {max_sweeps} sweeps")

    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    return MultiGraph(n=g.n, u=u, v=v)


def rewire_union_to_simple(g, rng: np.random.Generator, max_sweeps: int = 20):
    """Make a generated graph simple while respecting its subgraph structure.

    Edges first switch only against partners from their own provenance
    class, so community edges keep both endpoints inside their community and
    per-node community/background degrees are preserved.  Residual
    duplicates between a community copy and a background copy are cleared by
    switching the background copy.  A handful of conflicts can be stuck
    inside a single class (e.g. a community member adjacent to every other
    member); those fall back to class-crossing switches, and edges created
    that way are relabelled as background.  Requires provenance labels; the
    result keeps them.
    """
    from .graph import MultiGraph

    if g.provenance is None:
        raise PreconditionError("union rewiring needs provenance labels")
    edges = [(int(a), int(b)) for a, b in zip(g.u, g.v)]
    classes = g.provenance.tolist()
    counts = Counter(edges)
    bad = _badness(counts)

    by_class: dict[int, list[int]] = {}
    for i, c in enumerate(classes):
        by_class.setdefault(c, []).append(i)

    def conflict_delta(removed, added):
        delta = 0
        work = Counter()
        for e in removed:
            work[e] -= 1
        for e in added:
            work[e] += 1
        for (a, b), dm in work.items():
            if dm == 0:
                continue
            m0 = counts[(a, b)]
            m1 = m0 + dm
            cost0 = m0 if a == b else max(m0 - 1, 0)
            cost1 = m1 if a == b else max(m1 - 1, 0)
            delta += cost1 - cost0
        return delta

    def sweep(cross_class: bool) -> None:
        nonlocal bad
        conflicted = [i for i, e in enumerate(edges) if e[0] == e[1] or counts[e] > 1]
        rng.shuffle(conflicted)
        # Background copies go first so cross-class duplicates are resolved
        # by moving the background edge, leaving community edges alone.
        conflicted.sort(key=lambda i: classes[i] != 0)
        for i in conflicted:
            a, b = edges[i]
            if a != b and counts[(a, b)] <= 1:
                continue
            pool = by_class[classes[i]] if not cross_class else None
            if pool is not None and len(pool) < 2:
                continue
            if pool is not None:
                j = pool[int(rng.integers(len(pool)))]
            else:
                j = int(rng.integers(len(edges)))
            if j == i:
                continue
            c, d = edges[j]
            if rng.random() < 0.5:
                c, d = d, c
            new1 = (a, c) if a <= c else (c, a)
            new2 = (b, d) if b <= d else (d, b)
            delta = conflict_delta([edges[i], edges[j]], [new1, new2])
            if delta < 0:
                counts[edges[i]] -= 1
                counts[edges[j]] -= 1
                counts[new1] += 1
                counts[new2] += 1
                edges[i] = new1
                edges[j] = new2
                if cross_class and classes[i] != classes[j]:
                    # mixed-provenance switch: both results live in the
                    # background class from now on
                    for idx in (i, j):
                        old = classes[idx]
                        if old != 0:
                            by_class[old].remove(idx)
                            by_class.setdefault(0, []).append(idx)
                            classes[idx] = 0
                bad += delta

    for _ in range(max_sweeps):
        if bad == 0:
            break
        sweep(cross_class=False)
    for _ in range(max_sweeps):
        if bad == 0:
            break
        sweep(cross_class=True)
    if bad > 0:
        raise NotSimpleError(f"{bad} conflicting edge slots remain after {max_sweeps} sweeps")

    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    prov = np.array(classes, dtype=np.int32)
    order = np.lexsort((prov, v, u))
    return MultiGraph(
        n=g.n, u=u[order], v=v[order], provenance=prov[order], params=g.params
    )
