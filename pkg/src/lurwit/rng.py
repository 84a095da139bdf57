"""Reproducible random streams for Monte Carlo runs.

Streams are counter-based (Philox) and keyed by (seed, task), so any task in
a batch can be recomputed independently and results never depend on
execution order.
"""

from __future__ import annotations

import numpy as np

_WORD = 2**64


def stream(seed: int, task: int = 0) -> np.random.Generator:
    """Generator for the (seed, task) pair; same pair, same bit stream."""
    key = np.array([seed % _WORD, task % _WORD], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
