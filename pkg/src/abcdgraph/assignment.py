"""Uniform sampling of admissible node-to-community assignments.

A node of degree w may live in a community of size c only if
ceil((1 - xi*phi) * w) <= c - 1, where phi = 1 - sum((c_j/n)**2).  Nodes are
processed in nonincreasing degree order and placed into an eligible
community with probability proportional to its remaining capacity, which
selects uniformly among all admissible assignments.

Since sizes are sorted nonincreasing, the eligible set is always a prefix of
the community list, and the prefix only grows as degrees shrink.  The prefix
stage samples from a Fenwick tree over remaining capacities in O(log ell)
per node.  Once every community is eligible, proportional-to-capacity
sampling is equivalent to dealing out the remaining spots in a uniformly
shuffled order, which the final stage does in one vectorized pass.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError
from .sequences import CommunitySizes, DegreeSequence

# Tolerance for ceil() on a product that is mathematically an integer.
_CEIL_EPS = 1e-9


@dataclass(frozen=True)
class Assignment:
    """community_of[i] is the 0-based community index of node i."""

    community_of: np.ndarray
    phi: float

    @property
    def n(self) -> int:
        return len(self.community_of)


def compute_phi(sizes: CommunitySizes, n: int) -> float:
    """Admissibility slack 1 - sum((c_j / n)**2)."""
    c = sizes.sizes.astype(np.float64)
    return float(1.0 - np.sum((c / n) ** 2))


def _size_thresholds(degrees: np.ndarray, xi: float, phi: float) -> np.ndarray:
    """Minimum community size admitting each degree: ceil((1-xi*phi)*w) + 1."""
    scaled = (1.0 - xi * phi) * degrees.astype(np.float64)
    return np.ceil(scaled - _CEIL_EPS).astype(np.int64) + 1


class _Fenwick:
    """Prefix sums with point updates and sampling by cumulative weight."""

    def __init__(self, values: np.ndarray):
        n = len(values)
        self.size = n
        tree = np.zeros(n + 1, dtype=np.int64)
        tree[1:] = values
        for i in range(1, n + 1):
            j = i + (i & -i)
            if j <= n:
                tree[j] += tree[i]
        self.tree = tree

    def prefix_sum(self, m: int) -> int:
        total = 0
        while m > 0:
            total += self.tree[m]
            m -= m & -m
        return int(total)

    def add(self, idx: int, delta: int) -> None:
        i = idx + 1
        while i <= self.size:
            self.tree[i] += delta
            i += i & -i

    def find(self, target: int) -> int:
        """Smallest index idx with prefix_sum(idx+1) > target."""
        idx = 0
        bit = 1 << (self.size.bit_length())
        while bit:
            nxt = idx + bit
            if nxt <= self.size and self.tree[nxt] <= target:
                idx = nxt
                target -= self.tree[nxt]
            bit >>= 1
        return idx


def assign(
    degrees: DegreeSequence,
    sizes: CommunitySizes,
    xi: float,
    rng: np.random.Generator,
) -> Assignment:
    """Place every node into a community, uniformly over admissible choices."""
    w = degrees.degrees
    c = sizes.sizes
    n, ell = len(w), len(c)
    if int(c.sum()) != n:
        raise InfeasibleError(f"community sizes sum to {int(c.sum())}, expected n={n}")
    phi = compute_phi(sizes, n)
    thresholds = _size_thresholds(w, xi, phi)

    # Number of eligible communities per node; a prefix of the sorted sizes.
    # Nondecreasing because nodes are processed in nonincreasing degree order.
    prefix_len = np.searchsorted(-c, -thresholds, side="right")

    community_of = np.empty(n, dtype=np.int64)
    remaining = c.copy()
    i = 0
    if n > 0 and prefix_len[0] < ell:
        fen = _Fenwick(remaining)
        while i < n:
            m = int(prefix_len[i])
            if m >= ell:
                break
            free = fen.prefix_sum(m)
            if free <= 0:
                raise InfeasibleError(
                    f"node {i} (degree {int(w[i])}) has no eligible community with capacity"
                )
            j = fen.find(int(rng.integers(free)))
            community_of[i] = j
            remaining[j] -= 1
            fen.add(j, -1)
            i += 1

    if i < n:
        # Every remaining node may enter every community: dealing spots out
        # uniformly at random matches the sequential proportional rule.
        labels = np.repeat(np.arange(ell, dtype=np.int64), remaining)
        community_of[i:] = rng.permutation(labels)

    return Assignment(community_of=community_of, phi=phi)


def is_admissible(
    assignment: Assignment,
    degrees: DegreeSequence,
    sizes: CommunitySizes,
    xi: float,
) -> bool:
    """Check the size condition for every node and exact occupancy per community."""
    w = degrees.degrees
    c = sizes.sizes
    n = len(w)
    if len(assignment.community_of) != n:
        return False
    phi = compute_phi(sizes, n)
    thresholds = _size_thresholds(w, xi, phi)
    if np.any(c[assignment.community_of] < thresholds):
        return False
    occupancy = np.bincount(assignment.community_of, minlength=len(c))
    return bool(np.array_equal(occupancy, c))


def enumerate_admissible(
    degrees: DegreeSequence, sizes: CommunitySizes, xi: float
) -> list[tuple[int, ...]]:
    """Brute-force list of all admissible assignments (test oracle).

    Only usable on tiny instances; the result grows combinatorially.
    """
    w = degrees.degrees
    c = sizes.sizes
    n, ell = len(w), len(c)
    phi = compute_phi(CommunitySizes(sizes=c), n)
    thresholds = _size_thresholds(w, xi, phi)
    out: list[tuple[int, ...]] = []
    state = np.zeros(ell, dtype=np.int64)
    choice: list[int] = []

    def recurse(i: int) -> None:
        if i == n:
            out.append(tuple(choice))
            return
        for j in range(ell):
            if state[j] < c[j] and c[j] >= thresholds[i]:
                state[j] += 1
                choice.append(j)
                recurse(i + 1)
                choice.pop()
                state[j] -= 1

    recurse(0)
    return out
