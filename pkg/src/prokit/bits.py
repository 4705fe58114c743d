"""Deterministic seeded bit stream.

The generator is SplitMix64: the 64-bit state advances by the golden-gamma
constant and each output word is the mixed state.  Words are consumed
most-significant bit first, so ``next_bits(3)`` followed by ``next_bits(5)``
yields the same bits as a single ``next_bits(8)``.  This layout is part of the
public contract; golden outputs in the test suite depend on it.
"""

from __future__ import annotations

from .errors import BitSourceDefective

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

#: retries allowed before :func:`uniform_index` gives up on a source
REJECTION_CAP = 4096


def splitmix64_mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class BitSource:
    """Seeded stream of uniform bits.

    Not thread safe: one owner at a time.

    Parameters
    ----------
    seed : int
        Any natural below 2**64.
    """

    __slots__ = ("seed", "_state", "_word", "_left", "words_drawn")

    def __init__(self, seed: int = 0):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must lie in [0, 2**64), got {seed}")
        self.seed = seed
        self._state = seed
        self._word = 0
        self._left = 0
        self.words_drawn = 0

    def __repr__(self):
        return f"BitSource(seed={self.seed}, words_drawn={self.words_drawn})"

    def next_word(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        self.words_drawn += 1
        return splitmix64_mix(self._state)

    def next_bits(self, k: int) -> int:
        """Return the next ``k`` bits as an integer in ``[0, 2**k)``."""
        if k < 0:
            raise ValueError("bit count must be non-negative")
        out = 0
        while k:
            if not self._left:
                self._word = self.next_word()
                self._left = 64
            take = min(k, self._left)
            self._left -= take
            out = (out << take) | ((self._word >> self._left) & ((1 << take) - 1))
            k -= take
        return out

    def uniform_float(self) -> float:
        """Uniform on [0, 1) with 53 bits of resolution."""
        return self.next_bits(53) / (1 << 53)


def uniform_index(size: int, bits: BitSource) -> int:
    """Draw an index uniformly from ``[0, size)`` by rejection sampling.

    Draws ``ceil(log2(size))`` bits per attempt and retries when the draw is
    out of range, so there is no modulo bias.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    width = (size - 1).bit_length()
    for _ in range(REJECTION_CAP):
        i = bits.next_bits(width)
        if i < size:
            return i
    raise BitSourceDefective(f"{REJECTION_CAP} consecutive rejections for size {size}")
