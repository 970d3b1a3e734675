"""Deterministic random substreams.

A master seed is split into independent substreams keyed by small integer
tags (one per pipeline stage, one per generated subgraph).  Substreams are
derived from the key alone, never from spawn order, so results do not depend
on scheduling or on the number of worker threads.
"""

import numpy as np

# Stage tags for substream keys.
TAG_DEGREES = 1
TAG_COMMUNITIES = 2
TAG_ASSIGNMENT = 3
TAG_WEIGHTS = 4
TAG_GRAPH = 5  # combined with a subgraph index: 0 = background, j >= 1 = community j
TAG_SWITCH = 6
TAG_ALGO = 7


def substream(seed: int, *key: int) -> np.random.Generator:
    """Return a generator for the substream identified by (seed, *key)."""
    if seed < 0 or any(k < 0 for k in key):
        raise ValueError("seed and substream keys must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([seed, *key]))
