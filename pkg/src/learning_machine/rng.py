"""Seed derivation helpers.

All stochastic operations take an explicit 64-bit seed and draw from a
PCG64 generator (numpy's default). Child streams are derived from the seed
plus string tags via SHA-256, so derivations are stable across processes
and do not depend on PYTHONHASHSEED.
"""

import hashlib

import numpy as np


def derive_seed(seed: int, *tags) -> int:
    """Map (seed, tags...) to a new 64-bit seed, stably."""
    h = hashlib.sha256()
    h.update(str(int(seed)).encode())
    for tag in tags:
        h.update(b"/")
        h.update(str(tag).encode())
    return int.from_bytes(h.digest()[:8], "little")


def rng_for(seed: int, *tags) -> np.random.Generator:
    """PCG64 generator for the given seed, optionally namespaced by tags."""
    if tags:
        seed = derive_seed(seed, *tags)
    return np.random.default_rng(np.uint64(seed))
