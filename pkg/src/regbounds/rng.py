"""Reproducible xoshiro256** streams seeded through splitmix64.

Layout used by the Monte-Carlo volume estimator (fixed, so any
implementation can reproduce the same estimate bit for bit):

* a splitmix64 sequence started at ``seed`` yields ``4 * LANES`` words;
  lane ``j`` takes words ``4j .. 4j+3`` as its xoshiro256** state;
* sample ``i`` is drawn from lane ``i % LANES``; a lane's samples use
  consecutive outputs, ``dim`` per sample;
* an output ``x`` maps to ``(x >> 11) * 2**-53`` in ``[0, 1)``.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
LANES = 4096

_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(seed: int, count: int) -> list[int]:
    state = seed & MASK64
    out = []
    for _ in range(count):
        state = (state + _GOLDEN) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """Scalar reference generator."""

    def __init__(self, state):
        self.s = [int(w) & MASK64 for w in state]
        if not any(self.s):
            raise ValueError("xoshiro256** state must not be all zero")

    @classmethod
    def seeded(cls, seed: int) -> "Xoshiro256StarStar":
        return cls(splitmix64(seed, 4))

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53


class LaneGenerator:
    """``lanes`` independent xoshiro256** streams advanced in lockstep with numpy."""

    def __init__(self, seed: int, lanes: int = LANES):
        words = np.array(splitmix64(seed, 4 * lanes), dtype=np.uint64).reshape(lanes, 4)
        self.s = [words[:, k].copy() for k in range(4)]
        self.lanes = lanes

    @staticmethod
    def _rotl(x, k):
        return (x << np.uint64(k)) | (x >> np.uint64(64 - k))

    def next_u64(self) -> np.ndarray:
        s0, s1, s2, s3 = self.s
        with np.errstate(over="ignore"):
            result = self._rotl(s1 * np.uint64(5), 7) * np.uint64(9)
        t = s1 << np.uint64(17)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self.s[3] = self._rotl(s3, 45)
        return result

    def next_double(self) -> np.ndarray:
        return (self.next_u64() >> np.uint64(11)).astype(np.float64) * 2.0 ** -53

    def uniform_block(self, dim: int, low: float = -1.0, high: float = 1.0) -> np.ndarray:
        """One sample per lane, shape ``(lanes, dim)``."""
        cols = [self.next_double() for _ in range(dim)]
        block = np.stack(cols, axis=1)
        return low + (high - low) * block
