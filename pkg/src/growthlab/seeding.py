"""Deterministic derivation of independent RNG streams.

All randomness in the package flows through one convention: a stream is
identified by a base seed plus a tuple of integer indices (day number,
sweep cell, bootstrap replicate, ...) and is materialized as
``seed XOR mix(*indices)`` where ``mix`` chains the splitmix64 finalizer.
Streams are therefore a pure function of (seed, indices) and never depend
on evaluation order, thread schedule or call history.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Fixed stream tags. Distinct high-entropy constants keep e.g. the day-0
# activity stream and the replicate-0 bootstrap stream unrelated even for
# equal base seeds.
STREAM_DAY = 0x6772_6F77_7468_6C61
STREAM_SCHEDULE = 0x5343_4845_4455_4C45
STREAM_CELL = 0x5357_4545_5043_454C
STREAM_BOOTSTRAP = 0x424F_4F54_5354_5250


def splitmix64(value: int) -> int:
    """One splitmix64 step: a bijective 64-bit finalizer with good avalanche."""
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix(*indices: int) -> int:
    """Fold any number of integer indices into one 64-bit word."""
    acc = 0x243F6A8885A308D3
    for index in indices:
        acc = splitmix64(acc ^ (index & _MASK64))
    return acc


def derive_seed(seed: int, *indices: int) -> int:
    """Seed for the sub-stream named by `indices`: seed XOR mix(*indices)."""
    if not indices:
        return seed & _MASK64
    return (seed ^ mix(*indices)) & _MASK64


def generator(seed: int, *indices: int) -> np.random.Generator:
    """A PCG64 generator positioned at the start of the named sub-stream."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, *indices)))
