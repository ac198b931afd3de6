"""Deterministic 64-bit seed derivation for independent random streams.

Every stochastic component of the pipeline (layout sampling, episode
simulation, dataset splitting, augmentation, parameter init) owns a private
stream whose seed is derived from a user-visible base seed plus integer
indices via a splitmix64 mixing chain.  Derivation is pure integer
arithmetic, so the same (seed, indices) pair yields the same stream on any
platform and under any parallel schedule.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 output step: a 64-bit finalizing mix of ``x``."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def mix(seed: int, *indices: int) -> int:
    """Derive a child seed from a base seed and a tuple of stream indices.

    mix(s) != mix(s, 0) in general; callers must fix an index convention
    and stick to it, since these values end up frozen in datasets.
    """
    h = splitmix64(seed & _MASK64)
    for i in indices:
        h = splitmix64(h ^ (i & _MASK64))
    return h
