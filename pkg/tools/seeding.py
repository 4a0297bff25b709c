"""Seeded random streams.

All randomness goes through ``numpy.random.Philox`` (a counter-based
generator) keyed by a ``SeedSequence`` built from the base seed and a tuple
of integer keys. The same (seed, keys) gives the same stream on every
platform and in any execution order.
"""

from __future__ import annotations

import numpy as np

# Stream ids; first element of every key tuple.
STREAM_GRAPH = 1
STREAM_TERMINALS = 2
STREAM_WALK = 3
STREAM_PARITY = 4


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return seed


def derive_seed_sequence(seed: int, *keys: int) -> np.random.SeedSequence:
    """SeedSequence for ``seed`` and the spawn path ``keys`` (non-negative ints)."""
    spawn_key = tuple(int(k) for k in keys)
    if any(k < 0 for k in spawn_key):
        raise ValueError(f"seed keys must be non-negative, got {spawn_key}")
    return np.random.SeedSequence(_check_seed(seed), spawn_key=spawn_key)


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Philox-backed Generator for ``seed`` and ``keys``."""
    return np.random.Generator(np.random.Philox(derive_seed_sequence(seed, *keys)))


def derive_seed(seed: int, *keys: int) -> int:
    """A 63-bit integer seed derived from ``seed`` and ``keys`` (for nested APIs taking ints)."""
    state = derive_seed_sequence(seed, *keys).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))
