"""Degree and community-size sequences.

Degrees are i.i.d. truncated power-law draws with a parity fix: if the sum
is odd, one node of maximum degree is decremented by one.  Community sizes
are drawn until they cover n nodes, with the final overshoot either trimmed
from the last community or, when trimming would undershoot the minimum size,
redistributed as +1 increments over distinct earlier communities.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError
from .params import AbcdParams
from .powerlaw import community_size_distribution, degree_distribution


@dataclass(frozen=True)
class DegreeSequence:
    """Node degrees, sorted nonincreasing; the sum is even."""

    degrees: np.ndarray

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return int(self.degrees.sum())


@dataclass(frozen=True)
class CommunitySizes:
    """Community sizes, sorted nonincreasing; they sum to n exactly."""

    sizes: np.ndarray

    @property
    def ell(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return int(self.sizes.sum())


def degree_sequence(params: AbcdParams, rng: np.random.Generator) -> DegreeSequence:
    """Draw n degrees, fix parity on one maximum-degree node, sort descending."""
    dist = degree_distribution(params)
    w = dist.sample(rng, params.n)
    w[::-1].sort()  # nonincreasing
    if w.sum() % 2 == 1:
        w[0] -= 1
        w[::-1].sort()
    return DegreeSequence(degrees=w)


def community_sizes(params: AbcdParams, rng: np.random.Generator) -> CommunitySizes:
    """Draw community sizes until they cover exactly n nodes.

    While the running sum is below n, sizes are i.i.d. draws.  Let z be the
    draw that first reaches or exceeds n and k the overshoot.  If k == 0 the
    draw is kept; if z-k >= s the last community is trimmed to z-k; otherwise
    the last draw is dropped and z-k earlier communities, chosen uniformly
    without replacement, grow by one node each.
    """
    if params.n < params.s:
        raise InfeasibleError(f"no community fits: n={params.n} < s={params.s}")
    dist = community_size_distribution(params)
    n = params.n
    sizes: list[int] = []
    total = 0
    while total < n:
        # Draw in blocks to amortize RNG call overhead.
        expect = max(16, (n - total) // max(params.s, 1) + 1)
        for z in dist.sample(rng, expect):
            z = int(z)
            if total + z < n:
                sizes.append(z)
                total += z
                continue
            k = total + z - n
            short = z - k  # nodes still missing, == n - total
            if k == 0:
                sizes.append(z)
            elif short >= params.s:
                sizes.append(short)
            else:
                if len(sizes) >= short:
                    bump = rng.choice(len(sizes), size=short, replace=False)
                else:
                    # Degenerate corner: fewer communities than increments
                    # needed; spread the remainder as evenly as possible.
                    bump = np.arange(len(sizes)).repeat(
                        -(-short // len(sizes))
                    )[:short]
                for j in bump:
                    sizes[j] += 1
            total = n
            break
    out = np.array(sizes, dtype=np.int64)
    out[::-1].sort()
    return CommunitySizes(sizes=out)
