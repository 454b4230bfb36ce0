"""
Seed Discipline
Counter-based random streams split deterministically from a master seed.

Every random draw in pseudograph comes from numpy's Philox-4x64 bit generator
keyed by a SeedSequence whose spawn key is the stream path (for example
(experiment point, trial index)). Streams are therefore independent of
execution order and thread count, and byte-identical across platforms.
"""

from typing import Tuple

import numpy as np

RNG_NAME = "numpy.Philox4x64-10"
SEED_RULE = "SeedSequence(entropy=master, spawn_key=stream)"
MASK64 = (1 << 64) - 1

# Stream tags keep different consumers of one master seed apart
STREAM_GNP = 1
STREAM_REGULAR = 2
STREAM_SAMPLING = 3
STREAM_MONTE_CARLO = 4
STREAM_ORACLE = 5


def stream_key(*stream: int) -> Tuple[int, ...]:
    return tuple(int(s) & MASK64 for s in stream)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for the stream (seed, *stream)."""
    sequence = np.random.SeedSequence(entropy=int(seed) & MASK64, spawn_key=stream_key(*stream))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: int, *stream: int) -> int:
    """A 64-bit child seed for the stream, for logging and reports."""
    sequence = np.random.SeedSequence(entropy=int(seed) & MASK64, spawn_key=stream_key(*stream))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
