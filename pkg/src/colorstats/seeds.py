"""Deterministic, collision-free random streams derived from a master seed.

Every sampler in the package takes a numpy Generator.  Concurrent or
repeated work derives one stream per task from (master, *key) via
SeedSequence, so results never depend on scheduling or worker count.
"""

from __future__ import annotations

import numpy as np


def stream(master: int, *key: int) -> np.random.Generator:
    """Generator for the stream keyed by (master, *key).

    Identical arguments always give an identical stream; distinct keys give
    statistically independent streams.
    """
    entropy = (int(master),) + tuple(int(k) for k in key)
    if any(e < 0 for e in entropy):
        raise ValueError(f"seed components must be non-negative, got {entropy}")
    return np.random.default_rng(np.random.SeedSequence(entropy))
