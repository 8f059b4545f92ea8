"""Seeded randomness.

Every random draw goes through ``numpy.random.Generator`` on the Philox4x64-10
counter-based bit generator keyed directly by the 64-bit seed (key
``(seed, 0)``, counter starting at zero).  Floats use numpy's 53-bit
conversion ``(next_uint64 >> 11) * 2^-53``.
"""

from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & SEED_MASK))


def child_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream ``index`` for the same seed (second key word)."""
    return np.random.Generator(np.random.Philox(key=(int(seed) & SEED_MASK) | (int(index) << 64)))
