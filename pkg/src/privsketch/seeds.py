"""Derivation of independent, reproducible random streams from one seed.

Every source of randomness in the library (sensing-matrix columns, release
noise, per-segment counter noise, selection draws, synthetic data) pulls from
its own stream, derived from the user-visible 64-bit seed plus a fixed domain
tag. Streams never overlap, and any component can be regenerated in
isolation from the seed alone.
"""

from __future__ import annotations

import secrets

import numpy as np

# Domain tags: the first element of every derived stream's spawn key.
SENSING = 0          # sensing-matrix columns, one stream per column index
RELEASE_NOISE = 1    # Laplace noise on the measurement vector
BASELINE_NOISE = 2   # Laplace noise for the identity-query baseline
SEGMENT_NOISE = 3    # per-dyadic-segment counter noise
SELECTION = 4        # exponential-mechanism draw for sparsity selection
SYNTH = 5            # synthetic data generation
TRIAL = 6            # per-trial seeds in the benchmark harness


def derive_rng(seed: int, *path: int) -> np.random.Generator:
    """Return a generator on the stream identified by ``(seed, *path)``."""
    key = tuple(int(p) for p in path)
    return np.random.default_rng(
        np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    )


def derive_seed(seed: int, *path: int) -> int:
    """Collapse ``(seed, *path)`` into a fresh 64-bit integer seed."""
    key = tuple(int(p) for p in path)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])


def fresh_seed() -> int:
    """Entropy-derived seed for when the caller did not provide one."""
    return secrets.randbits(63)
