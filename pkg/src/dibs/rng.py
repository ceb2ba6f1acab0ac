"""Deterministic 64-bit random streams shared by every sampler in the package.

The generator is splitmix64 (named in all output headers as ``rng=splitmix64``),
chosen because its jump-free "hash of a counter" form makes per-vertex and
per-trial coins a pure function of (seed, tag, index).  That is what the
reproducibility contracts need: whether trials run sequentially or in
parallel, coin i of stream (seed, tag) has one value.

Streams are derived, never shared: ``substream(seed, tag)`` mixes a tag into
the seed, and the resulting :class:`Stream` hands out scalar draws or whole
numpy arrays of uniforms.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Fixed stream tags, one per consumer, so samplers never collide.
TAG_X_COINS = 0x58C0494E
TAG_Y_COINS = 0x59C0494E
TAG_U_COINS = 0x55C0494E
TAG_PAIRS = 0x50414952
TAG_MIXING = 0x4D495853
TAG_GNP = 0x474E5000
TAG_PROCESS = 0x50524F43


def mix64(x: int) -> int:
    """splitmix64 output function applied to a 64-bit state."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK
    return x ^ (x >> 31)


def substream(seed: int, tag: int) -> int:
    """Derive the base state of an independent stream from (seed, tag)."""
    return mix64((mix64(seed & _MASK) ^ mix64((tag * _GAMMA) & _MASK)) & _MASK)


def _vec_mix64(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX2)
    x ^= x >> np.uint64(31)
    return x


class Stream:
    """Sequential splitmix64 stream with bulk (vectorized) draws.

    ``uniforms(k)`` consumes k counter positions and equals k successive
    ``uniform()`` calls; mixing scalar and bulk draws keeps determinism.
    """

    def __init__(self, state: int):
        self._base = state & _MASK
        self._i = 0

    def next_u64(self) -> int:
        out = mix64((self._base + (self._i + 1) * _GAMMA) & _MASK)
        self._i += 1
        return out

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (unbiased enough at our ranges)."""
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def u64s(self, k: int) -> np.ndarray:
        idx = np.arange(self._i + 1, self._i + k + 1, dtype=np.uint64)
        self._i += k
        return _vec_mix64(np.uint64(self._base) + idx * np.uint64(_GAMMA))

    def uniforms(self, k: int) -> np.ndarray:
        return (self.u64s(k) >> np.uint64(11)) * 2.0**-53

    def sample_distinct(self, population: int, k: int) -> list[int]:
        """k distinct integers from range(population), order-sensitive."""
        if k > population:
            raise ValueError("sample larger than population")
        chosen: dict[int, int] = {}
        out = []
        for i in range(k):
            j = self.randint(i, population - 1)
            vi = chosen.get(i, i)
            vj = chosen.get(j, j)
            chosen[i], chosen[j] = vj, vi
            out.append(vj)
        return out

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]


def stream(seed: int, tag: int) -> Stream:
    return Stream(substream(seed, tag))


def uniforms_at(base_state: int, indices: np.ndarray) -> np.ndarray:
    """Uniform doubles at absolute stream positions, vectorized.

    ``uniforms_at(base, arange(k))`` equals ``Stream(base).uniforms(k)``; a
    coin keyed by an id never depends on which other ids were drawn.
    """
    u = _vec_mix64(
        np.uint64(base_state)
        + (indices.astype(np.uint64) + np.uint64(1)) * np.uint64(_GAMMA)
    )
    return (u >> np.uint64(11)) * 2.0**-53
