"""Seeded PCG32 generator.

This is the PCG-XSH-RR 64/32 generator from M. O'Neill's reference
implementation (``pcg32_srandom_r`` / ``pcg32_random_r`` /
``pcg32_boundedrand_r``), so a (seed, stream) pair produces the same stream
in any language that implements the reference.  The stdlib Mersenne Twister
is not used because its bounded-integer and sampling routines are
implementation details of CPython.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1
_MULT = 6364136223846793005
DEFAULT_STREAM = 54


class Pcg32:
    __slots__ = ("_state", "_inc")

    def __init__(self, seed: int, stream: int = DEFAULT_STREAM):
        self._state = 0
        self._inc = ((stream << 1) | 1) & _MASK64
        self._step()
        self._state = (self._state + (seed & _MASK64)) & _MASK64
        self._step()

    def _step(self):
        self._state = (self._state * _MULT + self._inc) & _MASK64

    def next_u32(self) -> int:
        old = self._state
        self._step()
        xorshifted = (((old >> 18) ^ old) >> 27) & _MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & _MASK32

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection; bound <= 2**32."""
        if not 0 < bound <= 1 << 32:
            raise ValueError(f"bound {bound} out of range")
        threshold = ((1 << 32) - bound) % bound
        while True:
            r = self.next_u32()
            if r >= threshold:
                return r % bound

    def sample_distinct(self, population: int, k: int) -> list[int]:
        """k distinct values from range(population), by a sparse partial Fisher-Yates."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot draw {k} distinct values from {population}")
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(population - i)
            out.append(swapped.get(j, j))
            swapped[j] = swapped.get(i, i)
        return out

    def spawn(self, index: int) -> Pcg32:
        """Independent child generator keyed by index; does not advance self."""
        return Pcg32(self._state ^ (index * 0x9E3779B97F4A7C15 & _MASK64), stream=index + 1)
