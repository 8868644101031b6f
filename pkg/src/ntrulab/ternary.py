"""Ternary polynomial sets T(d1, d2) and uniform sampling from them.

A member of T(d1, d2) has exactly d1 coefficients equal to +1, d2 equal
to -1, and all others 0. These sets supply NTRU's secret key f (from
T(d+1, d)), the key component g, and the per-message blinding polynomial
r (both from T(d, d)).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .ring import ConvPoly, RankMismatchError
from .rng import RandomSource

__all__ = ["TernaryShape", "ShapeTooLargeError", "sample_ternary", "is_member"]


class ShapeTooLargeError(ValueError):
    """More nonzero coefficients requested than the rank allows."""


@dataclass(frozen=True)
class TernaryShape:
    """Coefficient counts for T(d1, d2) at rank n."""

    d1: int
    d2: int
    n: int

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise ValueError(f"counts must be nonnegative, got d1={self.d1}, d2={self.d2}")
        if self.n < 1:
            raise ValueError(f"rank must be positive, got {self.n}")
        if self.d1 + self.d2 > self.n:
            raise ShapeTooLargeError(
                f"d1 + d2 = {self.d1 + self.d2} exceeds rank {self.n}"
            )


def sample_ternary(shape: TernaryShape, rng: RandomSource) -> ConvPoly:
    """Draw uniformly from T(d1, d2).

    Shuffling the full coefficient multiset with an unbiased shuffle makes
    every arrangement equally likely, so the draw is exactly uniform over
    the set, not just approximately.
    """
    coeffs = [1] * shape.d1 + [-1] * shape.d2 + [0] * (shape.n - shape.d1 - shape.d2)
    rng.shuffle(coeffs)
    return ConvPoly(coeffs)


def is_member(a: ConvPoly, shape: TernaryShape) -> bool:
    """True iff a has exactly d1 ones, d2 minus-ones, and zeros elsewhere."""
    if a.n != shape.n:
        raise RankMismatchError(f"rank mismatch: polynomial {a.n} vs shape {shape.n}")
    counts = Counter(a.coeffs)
    if set(counts) - {1, -1, 0}:
        return False
    return counts[1] == shape.d1 and counts[-1] == shape.d2
