"""Splitting node degrees into community and background parts.

Each degree w is split as w = y + z where y is spent inside the node's own
community and z in the background graph.  Non-leaders get
y = stochastic_round((1-xi) * w); the leader of each community (its
highest-degree member, ties broken by lowest node index) is rounded in the
direction that makes the community's y-sum even, so each community graph has
a realizable degree sequence.  Because the total degree is even, the global
background sum is then even as well.
"""

from dataclasses import dataclass

import numpy as np

from .assignment import Assignment
from .sequences import DegreeSequence

# Treat (1-xi)*w as integral when within this tolerance of an integer.
_INT_EPS = 1e-9


@dataclass(frozen=True)
class WeightSplit:
    """Community degrees y, background degrees z, and each community's leader."""

    y: np.ndarray
    z: np.ndarray
    leader_of: np.ndarray  # community index -> node index

    @property
    def n(self) -> int:
        return len(self.y)


def stochastic_round(x, rng: np.random.Generator):
    """Round x down or up at random so the expectation is exactly x.

    floor(x) is returned with probability 1 - frac(x) and floor(x) + 1 with
    probability frac(x).  Accepts scalars or arrays of non-negative values.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("stochastic_round requires non-negative input")
    base = np.floor(arr)
    frac = arr - base
    out = (base + (rng.random(arr.shape) < frac)).astype(np.int64)
    return int(out) if np.isscalar(x) else out


def split_weights(
    degrees: DegreeSequence,
    assignment: Assignment,
    xi: float,
    rng: np.random.Generator,
) -> WeightSplit:
    """Split every degree; per-community y-sums come out even."""
    w = degrees.degrees
    comm = assignment.community_of
    ell = int(comm.max()) + 1 if len(comm) else 0
    keep = 1.0 - xi

    y = stochastic_round(keep * w, rng)

    # Leader = first node per community when ordered by (degree desc, index asc).
    # Degrees arrive sorted nonincreasing, so index order already encodes that.
    order = np.lexsort((np.arange(len(w)), -w))
    present, first = np.unique(comm[order], return_index=True)
    leaders = order[first]

    target = keep * w[leaders].astype(np.float64)
    nearest = np.rint(target)
    integral = np.abs(target - nearest) < _INT_EPS

    sums = np.bincount(comm, weights=y, minlength=ell).astype(np.int64)
    nonleader_sum = sums[present] - y[leaders]

    # Fractional target: floor or ceil, whichever makes the sum even.
    f = np.floor(target).astype(np.int64)
    pick_floor = (nonleader_sum + f) % 2 == 0
    y_leader = np.where(pick_floor, f, f + 1)
    # Integral target: keep it if the parity already works, else +-1 by coin
    # flip, clamped to [0, w] at the boundaries.
    if np.any(integral):
        vals = nearest[integral].astype(np.int64)
        odd = (nonleader_sum[integral] + vals) % 2 == 1
        step = np.where(rng.random(int(integral.sum())) < 0.5, -1, 1)
        wl = w[leaders][integral]
        adj = np.where(vals == 0, 1, np.where(vals == wl, -1, step))
        y_leader[integral] = vals + np.where(odd, adj, 0)

    y[leaders] = y_leader
    z = w - y
    leader_of = np.full(ell, -1, dtype=np.int64)
    leader_of[present] = leaders
    return WeightSplit(y=y, z=z, leader_of=leader_of)
