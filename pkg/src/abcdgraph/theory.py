"""Closed-form quantities used as prediction overlays and constants.

Collected here: the mean degrees d (continuous) and d_hat (discrete), the
community-count constant c_hat with the predicted count c_hat * n**(1 -
tau*(2-beta)), the background degree law u_k, the low-noise threshold
constant xi0(delta) with its inner objective c(a, b), and the scalar
predictions for ground-truth modularity, the tree-dissection bound, and the
minimum-degree-one improvement.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import AbcdParams
from .powerlaw import TruncatedPowerLaw, community_size_distribution, degree_distribution


@dataclass(frozen=True)
class TheoryContext:
    """Per-parameter constants: mean degrees and predicted community count."""

    params: AbcdParams
    d: float
    d_hat: float
    c_hat: float
    ell_pred: float

    @staticmethod
    def from_params(params: AbcdParams) -> "TheoryContext":
        cont = TruncatedPowerLaw(params.gamma, params.delta, params.max_degree, "continuous")
        disc = TruncatedPowerLaw(params.gamma, params.delta, params.max_degree, "discrete")
        ch = c_hat(params.beta, params.s)
        return TheoryContext(
            params=params,
            d=cont.mean(),
            d_hat=disc.mean(),
            c_hat=ch,
            ell_pred=predicted_community_count(params),
        )


def c_hat(beta: float, s: int) -> float:
    """Constant (2-beta) / ((beta-1) * s**(beta-1)) in the community count."""
    return (2.0 - beta) / ((beta - 1.0) * s ** (beta - 1.0))


def predicted_community_count(params: AbcdParams) -> float:
    """c_hat * n**(1 - tau*(2-beta))."""
    expo = 1.0 - params.tau * (2.0 - params.beta)
    return c_hat(params.beta, params.s) * params.n**expo


def background_pmf(params: AbcdParams) -> dict[int, float]:
    """Law u_k of a node's background degree.

    A node of degree i keeps background degree floor(xi*i) or ceil(xi*i) by
    stochastic rounding, so u_k collects (1 - |xi*i - k|) * q_i over the
    integers i with |xi*i - k| < 1, delta <= i <= D.
    """
    dist = degree_distribution(params)
    xi = params.xi
    u: dict[int, float] = {}
    for i in range(params.delta, params.max_degree + 1):
        x = xi * i
        qi = dist.pmf(i)
        for k in {math.floor(x), math.ceil(x)}:
            weight = 1.0 - abs(x - k)
            if weight > 0.0:
                u[k] = u.get(k, 0.0) + weight * qi
    return dict(sorted(u.items()))


def c_ab(a: int, b: int) -> float:
    """Inner expansion constant of the low-noise threshold objective."""
    if b < 3:
        raise DomainError(f"b={b} must be at least 3")
    if a < 1:
        raise DomainError(f"a={a} must be at least 1")
    ab = a * b
    return (b - 2.0 * math.sqrt(b - 1.0)) / (2.0 * b) * ab / (ab + b - 1.0) - (
        b - 1.0
    ) / (ab + b - 1.0) - 0.011


def xi0(delta: int) -> tuple[float, int, int]:
    """Low-noise threshold: maximize min(1 - ab/delta, c(a,b)/4, 1/20).

    Scans all integer pairs a >= 1, b >= 3 with ab < delta; ties go to the
    lexicographically smallest (a, b).  Returns (value, a, b).
    """
    if delta < 4:
        raise DomainError(f"delta={delta} admits no pair with a*b < delta, b >= 3")
    best = (-math.inf, 0, 0)
    for a in range(1, (delta - 1) // 3 + 1):
        for b in range(3, (delta - 1) // a + 1):
            value = min(1.0 - a * b / delta, c_ab(a, b) / 4.0, 0.05)
            if value > best[0]:
                best = (value, a, b)
    return best


def predict_ground_truth_q(params: AbcdParams) -> float:
    """Asymptotic ground-truth modularity, 1 - xi."""
    return 1.0 - params.xi


def predict_tree_bound(params: AbcdParams) -> float:
    """Tree-dissection level 2*alpha/d_hat with alpha = 1, valid for xi*delta >= 3.

    Below that threshold a giant component still exists but its constant is
    not explicit, so no number is produced.
    """
    if params.xi * params.delta < 3.0:
        raise DomainError(
            "tree-dissection constant requires xi*delta >= 3; "
            "below it the component fraction is a non-explicit constant"
        )
    disc = TruncatedPowerLaw(params.gamma, params.delta, params.max_degree, "discrete")
    return 2.0 / disc.mean()


def predict_lucky_improvement(params: AbcdParams) -> float:
    """Modularity gain xi*q1/d*(2 - q1/d) from re-homing degree-1 background
    nodes; defined only for delta = 1.  Uses the discrete degree law."""
    if params.delta != 1:
        raise DomainError("the degree-1 improvement is defined only for delta = 1")
    disc = TruncatedPowerLaw(params.gamma, params.delta, params.max_degree, "discrete")
    q1 = disc.pmf(1)
    d = disc.mean()
    r = q1 / d
    return params.xi * r * (2.0 - r)


def predict_degree_ccdf(params: AbcdParams) -> tuple[np.ndarray, np.ndarray]:
    """Theoretical degree ccdf curve (K, P(W >= K)) in the params' variant."""
    dist = degree_distribution(params)
    ks = np.arange(dist.lo, dist.hi + 1, dtype=np.int64)
    return ks, dist.ccdf_array(ks)


def predict_community_ccdf(params: AbcdParams) -> tuple[np.ndarray, np.ndarray]:
    """Theoretical community-size ccdf curve in the params' variant."""
    dist = community_size_distribution(params)
    ks = np.arange(dist.lo, dist.hi + 1, dtype=np.int64)
    return ks, dist.ccdf_array(ks)


_PREDICTIONS = {
    "ground-truth-q": predict_ground_truth_q,
    "tree-bound": predict_tree_bound,
    "lucky-improvement": predict_lucky_improvement,
    "degree-ccdf": predict_degree_ccdf,
    "community-ccdf": predict_community_ccdf,
}


def predictions(params: AbcdParams, which: str):
    """Dispatch on the prediction name; see _PREDICTIONS for choices."""
    try:
        fn = _PREDICTIONS[which]
    except KeyError:
        raise DomainError(f"unknown prediction {which!r}; choices: {sorted(_PREDICTIONS)}") from None
    return fn(params)
