"""Truncated power-law distributions on integer supports.

Two variants are used throughout the model.  The continuous variant assigns

    pmf(k) = (k**(1-a) - (k+1)**(1-a)) / (lo**(1-a) - (hi+1)**(1-a)),

i.e. the mass of [k, k+1) under the density x**(-a) truncated to [lo, hi+1].
The discrete variant assigns pmf(k) = k**(-a) / sum(x**(-a), x=lo..hi).
Degrees are drawn from (gamma, delta, n**zeta) and community sizes from
(beta, s, n**tau), in either variant.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TruncatedPowerLaw:
    exponent: float
    lo: int
    hi: int
    variant: str = "continuous"

    # Probability table over lo..hi and its cumulative sum, built once.
    _pmf: np.ndarray = field(init=False, repr=False, compare=False)
    _cum: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.exponent <= 1.0:
            raise DomainError(f"exponent {self.exponent} must exceed 1")
        if not (1 <= self.lo <= self.hi):
            raise DomainError(f"support [{self.lo}, {self.hi}] is invalid")
        if self.variant not in ("continuous", "discrete"):
            raise DomainError(f"unknown variant {self.variant!r}")
        k = np.arange(self.lo, self.hi + 1, dtype=np.float64)
        a = self.exponent
        if self.variant == "continuous":
            mass = k ** (1.0 - a) - (k + 1.0) ** (1.0 - a)
        else:
            mass = k**-a
        pmf = mass / math.fsum(mass)
        object.__setattr__(self, "_pmf", pmf)
        object.__setattr__(self, "_cum", np.cumsum(pmf))

    def _check_support(self, k: int) -> None:
        if not (self.lo <= k <= self.hi):
            raise DomainError(f"k={k} outside support [{self.lo}, {self.hi}]")

    def pmf(self, k: int) -> float:
        """Probability of the single value k."""
        self._check_support(k)
        return float(self._pmf[k - self.lo])

    def ccdf(self, k: int) -> float:
        """Tail probability P(X >= k)."""
        self._check_support(k)
        idx = k - self.lo
        return float(1.0 - self._cum[idx - 1]) if idx > 0 else 1.0

    def ccdf_array(self, ks: np.ndarray) -> np.ndarray:
        """Vectorized ccdf over values inside the support."""
        ks = np.asarray(ks, dtype=np.int64)
        if ks.size and (ks.min() < self.lo or ks.max() > self.hi):
            raise DomainError("values outside support")
        idx = ks - self.lo
        out = np.ones(ks.shape, dtype=np.float64)
        pos = idx > 0
        out[pos] = 1.0 - self._cum[idx[pos] - 1]
        return out

    def mean(self) -> float:
        """Expected value, by direct summation of k * pmf(k)."""
        k = np.arange(self.lo, self.hi + 1, dtype=np.float64)
        return math.fsum(k * self._pmf)

    def moment(self, order: int) -> float:
        """Raw moment E[X**order], by direct summation."""
        k = np.arange(self.lo, self.hi + 1, dtype=np.float64)
        return math.fsum(k**order * self._pmf)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Draw ``count`` values by inverse-CDF lookup on a uniform stream."""
        if count < 0:
            raise DomainError("count must be non-negative")
        u = rng.random(count)
        idx = np.searchsorted(self._cum, u, side="right")
        # Rounding in the cumulative table can push searchsorted one past hi.
        np.clip(idx, 0, self.hi - self.lo, out=idx)
        return (self.lo + idx).astype(np.int64)

    def quantile(self, u: float) -> int:
        """Smallest k with CDF(k) >= u; nondecreasing in u."""
        idx = int(np.searchsorted(self._cum, u, side="left"))
        return self.lo + min(idx, self.hi - self.lo)


def degree_distribution(params) -> TruncatedPowerLaw:
    """The node-degree law (gamma, delta, n**zeta) in the params' variant."""
    return TruncatedPowerLaw(params.gamma, params.delta, params.max_degree, params.variant)


def community_size_distribution(params) -> TruncatedPowerLaw:
    """The community-size law (beta, s, n**tau) in the params' variant."""
    return TruncatedPowerLaw(params.beta, params.s, params.max_community_size, params.variant)
