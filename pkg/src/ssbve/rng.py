"""Deterministic seeded randomness used by every generator in the package.

The core generator is SplitMix64: state advances by the 64-bit golden-ratio
constant and each output is a finalized mix of the new state.  The algorithm
is fully specified by the two multiply-xorshift rounds below, so any language
can reproduce the streams bit-for-bit from the same 64-bit seed.  Substreams
are derived by seeding a fresh generator with ``mix64(seed ^ mix64(tag))``.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit mixing function."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Counter-based 64-bit generator with helpers for sampling tasks."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * (2.0 ** -53)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        threshold = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            r = self.u64()
            if r < threshold:
                return r % n

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_range(self, n: int, k: int) -> list[int]:
        """k distinct integers from [0, n), in selection order."""
        if k > n:
            raise ValueError("cannot sample more elements than the population")
        # Partial Fisher-Yates over a sparse array.
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.randrange(n - i)
            vi = swapped.get(i, i)
            vj = swapped.get(j, j)
            out.append(vj)
            swapped[j] = vi
        return out

    def spawn(self, tag: int) -> "SplitMix64":
        """Independent substream keyed by an integer tag."""
        return SplitMix64(mix64(self._state ^ mix64(tag & _MASK64)))


def stream(seed: int, *tags: int) -> SplitMix64:
    """Generator for (seed, tags...): the canonical substream derivation."""
    g = SplitMix64(mix64(seed & _MASK64))
    for t in tags:
        g = g.spawn(t)
    return g
