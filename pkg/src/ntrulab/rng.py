"""Seedable randomness for reproducible keygen, encryption, and game runs.

Every random choice in the package flows through a RandomSource that was
constructed from an explicit integer seed, so any keypair, ciphertext, or
attack transcript can be replayed exactly from the seed that produced it.
"""

from __future__ import annotations

import random

__all__ = ["RandomSource"]


class RandomSource:
    """Deterministic stream of uniform random values.

    Identical seeds yield identical streams. A RandomSource is a
    single-consumer object: do not share one instance between concurrent
    tasks; give each task its own via spawn().
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def bit(self) -> int:
        """Uniform bit in {0, 1}."""
        return self._rng.getrandbits(1)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return self._rng.randrange(n)

    def shuffle(self, items: list) -> None:
        """Uniform in-place Fisher-Yates shuffle."""
        self._rng.shuffle(items)

    def spawn(self) -> "RandomSource":
        """Derive an independent child source from this stream."""
        return RandomSource(self._rng.getrandbits(64))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"
