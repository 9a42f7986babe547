"""Deterministic derivation of per-trial RNG stream seeds.

Every randomized routine takes a 64-bit master seed and derives one
stream seed per (role, trial) via the splitmix64 finalizer below. The
mixing is part of the output contract: identical seeds must reproduce
identical traces byte for byte, across runs and platforms.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def spawn(seed: int, index: int) -> int:
    """Stream seed number `index` derived from `seed` (splitmix64 step)."""
    z = (seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)
