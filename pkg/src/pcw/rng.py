"""Seeded random streams.

All randomness in the package flows through :class:`Rng`, a thin subclass of
:class:`random.Random` (Mersenne Twister MT19937).  CPython's seeding of MT19937
from an integer and its ``getrandbits``/``randrange`` algorithms are
platform-independent, so identical seeds replay identical streams.
"""

from __future__ import annotations

import hashlib
import random

_MASK64 = (1 << 64) - 1


class Rng(random.Random):
    def __init__(self, seed: int = 0):
        seed = int(seed) & _MASK64
        self.seed_value = seed
        super().__init__(seed)

    def spawn(self, key) -> "Rng":
        """Independent child stream derived from this stream's seed and ``key``.

        Does not consume state from the parent.
        """
        digest = hashlib.sha256(f"{self.seed_value}:{key}".encode()).digest()
        return Rng(int.from_bytes(digest[:8], "big"))

    def sign(self) -> int:
        return 1 if self.getrandbits(1) else -1


def as_rng(seed_or_rng) -> Rng:
    if isinstance(seed_or_rng, Rng):
        return seed_or_rng
    return Rng(0 if seed_or_rng is None else seed_or_rng)
