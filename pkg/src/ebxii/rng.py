"""Deterministic 64-bit random number generation.

xoshiro256++ seeded through splitmix64, so a given integer seed yields the
same stream on every platform. Uniform doubles use the top 53 bits of each
output, offset by half a step so they lie strictly inside (0, 1).
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / (1 << 53)


def splitmix64_mix(z: int) -> int:
    """The splitmix64 output finaliser."""
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; returns (new_state, output)."""
    state = (state + _GOLDEN) & MASK64
    return state, splitmix64_mix(state)


def combine_seeds(*parts: int) -> int:
    """Hash-combine integers into one 64-bit seed (order-sensitive)."""
    h = 0
    for part in parts:
        _, h = splitmix64((h ^ (int(part) & MASK64)) & MASK64)
    return h


class Xoshiro256pp:
    """xoshiro256++ generator.

    >>> Xoshiro256pp(0).next_u64() == Xoshiro256pp(0).next_u64()
    True
    """

    def __init__(self, seed: int):
        sm = int(seed) & MASK64
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self._s = s

    @classmethod
    def from_state(cls, state) -> "Xoshiro256pp":
        """Build a generator from four raw 64-bit state words."""
        if len(state) != 4 or not any(state):
            raise ValueError("state must be four words, not all zero")
        gen = cls.__new__(cls)
        gen._s = [int(w) & MASK64 for w in state]
        return gen

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = ((((s0 + s3) & MASK64) << 23 | ((s0 + s3) & MASK64) >> 41) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self._s = [s0, s1, s2, s3]
        return result

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles uniform on (0, 1)."""
        out = np.empty(n, dtype=np.uint64)
        s0, s1, s2, s3 = self._s
        M = MASK64
        for i in range(n):
            r = (s0 + s3) & M
            out[i] = ((((r << 23) | (r >> 41)) & M) + s0) & M
            t = (s1 << 17) & M
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & M
        self._s = [s0, s1, s2, s3]
        return ((out >> np.uint64(11)).astype(float) + 0.5) * _INV_2_53
