"""Platform-independent seeded randomness.

All generators draw from :class:`SplitMix64`, a 64-bit counter generator
whose output is the SplitMix64 finalizer (xor-shift / multiply rounds)
applied to a Weyl sequence with increment ``0x9E3779B97F4A7C15``.  The
algorithm is pure integer arithmetic, so a given seed produces the same
stream on every platform and Python version.

Independent sub-streams are obtained with :func:`derive_seed`, which folds
a path of integer keys (stream tag, enterprise id, ...) into the master
seed.  Deriving the seed of enterprise 3 never touches the stream of
enterprise 0, so growing a workload leaves earlier enterprises unchanged.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijection on 64-bit integers."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Fold ``keys`` into ``seed``: ``s <- mix64(s + (key + 1) * GOLDEN_GAMMA)``."""
    s = seed & MASK64
    for key in keys:
        s = mix64(s + ((key + 1) * GOLDEN_GAMMA & MASK64))
    return s


class SplitMix64:
    """Seeded 64-bit generator with the handful of draws the toolkit needs."""

    def __init__(self, seed: int):
        if seed < 0 or seed > MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._state = seed

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection of the top partial block."""
        if n <= 0:
            raise ValueError("randbelow bound must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def sample(self, items: Sequence[T], k: int) -> list[T]:
        """``k`` distinct items, uniformly, in selection order (partial Fisher-Yates)."""
        if k < 0 or k > len(items):
            raise ValueError(f"cannot sample {k} of {len(items)} items")
        pool = list(items)
        for i in range(k):
            j = i + self.randbelow(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def spawn(self, *keys: int) -> "SplitMix64":
        """Generator on the sub-stream ``derive_seed(self.seed, *keys)``."""
        return SplitMix64(derive_seed(self.seed, *keys))


def as_rng(rng: "SplitMix64 | int") -> SplitMix64:
    if isinstance(rng, SplitMix64):
        return rng
    return SplitMix64(rng)
