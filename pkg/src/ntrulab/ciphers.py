"""Toy symmetric ciphers over Z_26: shift and substitution.

Texts are sequences of integers in [0, 26), with a codec to and from
lowercase letters (a = 0 ... z = 25). These ciphers are hosted by the
same indistinguishability harness as NTRU, where their determinism under
a reused key makes them lose the CPA game instantly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import RandomSource

__all__ = [
    "ALPHABET_SIZE",
    "CodecError",
    "InvalidPermutationError",
    "PermutationKey",
    "text_to_symbols",
    "symbols_to_text",
    "shift_encrypt",
    "shift_decrypt",
    "substitution_encrypt",
    "substitution_decrypt",
]

ALPHABET_SIZE = 26
_A = ord("a")


class CodecError(ValueError):
    """Input contains something outside a-z / [0, 26)."""


class InvalidPermutationError(ValueError):
    """The image table is not a permutation of 0..25."""


def text_to_symbols(text: str) -> list[int]:
    """Letters to numbers, a = 0 ... z = 25. Case-folded; anything else is rejected."""
    symbols = []
    for ch in text.lower():
        v = ord(ch) - _A
        if not 0 <= v < ALPHABET_SIZE:
            raise CodecError(f"non-alphabetic symbol {ch!r}")
        symbols.append(v)
    return symbols


def symbols_to_text(symbols) -> str:
    """Numbers back to letters; inverse of text_to_symbols."""
    _check_symbols(symbols)
    return "".join(chr(_A + s) for s in symbols)


def _check_symbols(symbols) -> None:
    for s in symbols:
        if not isinstance(s, int) or not 0 <= s < ALPHABET_SIZE:
            raise CodecError(f"symbol {s!r} out of range [0, {ALPHABET_SIZE})")


def _check_shift_key(k: int) -> None:
    if not isinstance(k, int) or not 0 <= k < ALPHABET_SIZE:
        raise ValueError(f"shift key must be in [0, {ALPHABET_SIZE}), got {k!r}")


def shift_encrypt(x, k: int) -> list[int]:
    """Symbolwise (x + k) mod 26."""
    _check_shift_key(k)
    _check_symbols(x)
    return [(s + k) % ALPHABET_SIZE for s in x]


def shift_decrypt(y, k: int) -> list[int]:
    """Symbolwise (y - k) mod 26."""
    _check_shift_key(k)
    _check_symbols(y)
    return [(s - k) % ALPHABET_SIZE for s in y]


@dataclass(frozen=True)
class PermutationKey:
    """A bijection on {0..25}, stored as its image table."""

    image: tuple

    def __post_init__(self):
        if tuple(sorted(self.image)) != tuple(range(ALPHABET_SIZE)):
            raise InvalidPermutationError("image table is not a permutation of 0..25")

    @classmethod
    def identity(cls) -> "PermutationKey":
        return cls(tuple(range(ALPHABET_SIZE)))

    @classmethod
    def from_shift(cls, k: int) -> "PermutationKey":
        """The rotation that makes the shift cipher a special case."""
        _check_shift_key(k)
        return cls(tuple((i + k) % ALPHABET_SIZE for i in range(ALPHABET_SIZE)))

    @classmethod
    def from_letters(cls, letters: str) -> "PermutationKey":
        """Build from a 26-letter string giving the images of a..z in order."""
        if len(letters) != ALPHABET_SIZE:
            raise InvalidPermutationError(
                f"permutation needs {ALPHABET_SIZE} letters, got {len(letters)}"
            )
        return cls(tuple(text_to_symbols(letters)))

    @classmethod
    def random(cls, rng: RandomSource) -> "PermutationKey":
        table = list(range(ALPHABET_SIZE))
        rng.shuffle(table)
        return cls(tuple(table))

    def inverse(self) -> "PermutationKey":
        inv = [0] * ALPHABET_SIZE
        for src, dst in enumerate(self.image):
            inv[dst] = src
        return PermutationKey(tuple(inv))


def substitution_encrypt(x, pi: PermutationKey) -> list[int]:
    """Symbolwise image under the permutation."""
    _check_symbols(x)
    return [pi.image[s] for s in x]


def substitution_decrypt(y, pi: PermutationKey) -> list[int]:
    """Symbolwise preimage under the permutation."""
    inv = pi.inverse()
    _check_symbols(y)
    return [inv.image[s] for s in y]
