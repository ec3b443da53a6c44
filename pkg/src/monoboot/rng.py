"""Deterministic random substreams.

Every replication in this package draws from its own generator, keyed by the
user seed plus a tuple of integer indices (replication, grid cell, ...).
Streams therefore do not depend on execution order or thread count.
"""

from __future__ import annotations

import numpy as np

_MASK32 = 0xFFFFFFFF


def _words(value: int) -> list[int]:
    if value < 0 or value >= 1 << 64:
        raise ValueError(f"stream key component out of uint64 range: {value}")
    return [value & _MASK32, (value >> 32) & _MASK32]


def substream(seed: int, *key: int) -> np.random.Generator:
    """Return a Philox generator for ``(seed, *key)``.

    The entropy is a fixed-width encoding (length word, then two 32-bit words
    per component), so keys of different lengths never collide. A plain
    ``SeedSequence([seed, m])`` would coincide with ``[seed, m, 0]``.
    """
    entropy = [len(key)] + _words(int(seed))
    for k in key:
        entropy += _words(int(k))
    ss = np.random.SeedSequence(np.array(entropy, dtype=np.uint32))
    return np.random.Generator(np.random.Philox(ss))
