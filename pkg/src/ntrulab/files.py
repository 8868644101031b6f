"""Flat-file formats for keys, ciphertexts, and plaintexts.

All files are line-oriented text. The first line always echoes the
parameter quadruple as `ntru-params N p q d`; the following lines carry
tagged polynomials in the `[c0,c1,...]` text form:

    public key:   h <poly>
    secret key:   f <poly>  then  Fp <poly>
    ciphertext:   e <poly>

Also provides the letters codec used by the CLI when p = 3: each letter
a..z becomes the value 1..26 written as three balanced base-3 digits, so
a rank-N plaintext carries floor(N/3) letters, zero-padded at the end.
The +1 offset keeps 'a' distinct from padding.
"""

from __future__ import annotations

from pathlib import Path

from .ciphers import CodecError, symbols_to_text, text_to_symbols
from .ring import ConvPoly
from .scheme import (
    NtruParams,
    NtruPublicKey,
    NtruSecretKey,
    ParamError,
    PROFILE_GUARANTEED,
    PROFILE_UNCHECKED,
    validate_params,
)
from .ternary import TernaryShape, is_member

__all__ = [
    "ParseError",
    "write_public_key",
    "read_public_key",
    "write_secret_key",
    "read_secret_key",
    "write_ciphertext",
    "read_ciphertext",
    "encode_letters",
    "decode_letters",
]

_LETTERS_PER_COEFFS = 3  # balanced base-3 digits per letter at p = 3


class ParseError(ValueError):
    """A file line failed to parse; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _params_line(params: NtruParams) -> str:
    return f"ntru-params {params.n} {params.p} {params.q} {params.d}"


def _parse_params(line: str, lineno: int) -> NtruParams:
    parts = line.split()
    if len(parts) != 5 or parts[0] != "ntru-params":
        raise ParseError(lineno, f"expected 'ntru-params N p q d', got {line!r}")
    try:
        n, p, q, d = (int(tok) for tok in parts[1:])
    except ValueError:
        raise ParseError(lineno, f"non-integer parameter in {line!r}") from None
    # Stored numbers decide the profile: guaranteed when the zero-failure
    # bound holds, unchecked otherwise.
    profile = PROFILE_GUARANTEED if q > (6 * d + 1) * p else PROFILE_UNCHECKED
    try:
        return validate_params(n, p, q, d, profile)
    except ParamError as exc:
        raise ParseError(lineno, str(exc)) from exc


def _parse_tagged_poly(line: str, lineno: int, tag: str, n: int) -> ConvPoly:
    parts = line.split(maxsplit=1)
    if len(parts) != 2 or parts[0] != tag:
        raise ParseError(lineno, f"expected '{tag} [c0,c1,...]', got {line!r}")
    try:
        poly = ConvPoly.from_text(parts[1])
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from exc
    if poly.n != n:
        raise ParseError(lineno, f"polynomial has rank {poly.n}, parameters say {n}")
    return poly


def _check_canonical(poly: ConvPoly, modulus: int, lineno: int, tag: str) -> None:
    for c in poly.coeffs:
        if not 0 <= c < modulus:
            raise ParseError(
                lineno, f"{tag} coefficient {c} outside canonical range [0, {modulus})"
            )


def _read_lines(path, expected: int) -> list[str]:
    lines = Path(path).read_text().splitlines()
    if len(lines) < expected:
        raise ParseError(len(lines) + 1, f"file ends early, expected {expected} lines")
    for extra, line in enumerate(lines[expected:], start=expected + 1):
        if line.strip():
            raise ParseError(extra, f"unexpected trailing content {line!r}")
    return lines[:expected]


def write_public_key(path, pk: NtruPublicKey) -> None:
    text = f"{_params_line(pk.params)}\nh {pk.h.to_text()}\n"
    Path(path).write_text(text)


def read_public_key(path) -> NtruPublicKey:
    lines = _read_lines(path, 2)
    params = _parse_params(lines[0], 1)
    h = _parse_tagged_poly(lines[1], 2, "h", params.n)
    _check_canonical(h, params.q, 2, "h")
    return NtruPublicKey(params, h)


def write_secret_key(path, sk: NtruSecretKey) -> None:
    text = f"{_params_line(sk.params)}\nf {sk.f.to_text()}\nFp {sk.fp.to_text()}\n"
    Path(path).write_text(text)


def read_secret_key(path) -> NtruSecretKey:
    lines = _read_lines(path, 3)
    params = _parse_params(lines[0], 1)
    f = _parse_tagged_poly(lines[1], 2, "f", params.n)
    if not is_member(f, TernaryShape(params.d + 1, params.d, params.n)):
        raise ParseError(2, f"f is not a member of T({params.d + 1},{params.d})")
    fp = _parse_tagged_poly(lines[2], 3, "Fp", params.n)
    _check_canonical(fp, params.p, 3, "Fp")
    return NtruSecretKey(params, f, fp)


def write_ciphertext(path, params: NtruParams, e: ConvPoly) -> None:
    text = f"{_params_line(params)}\ne {e.to_text()}\n"
    Path(path).write_text(text)


def read_ciphertext(path) -> tuple[NtruParams, ConvPoly]:
    lines = _read_lines(path, 2)
    params = _parse_params(lines[0], 1)
    e = _parse_tagged_poly(lines[1], 2, "e", params.n)
    _check_canonical(e, params.q, 2, "e")
    return params, e


def encode_letters(text: str, n: int) -> ConvPoly:
    """Pack letters into a ternary plaintext polynomial of rank n (p = 3 only).

    Letter value v becomes v + 1 in three balanced base-3 digits
    (2 is written as -1), occupying coefficients 3i, 3i+1, 3i+2.
    """
    symbols = text_to_symbols(text)
    capacity = n // _LETTERS_PER_COEFFS
    if len(symbols) > capacity:
        raise CodecError(
            f"text of {len(symbols)} letters exceeds capacity {capacity} at rank {n}"
        )
    coeffs = [0] * n
    for i, v in enumerate(symbols):
        value = v + 1
        for slot in range(_LETTERS_PER_COEFFS):
            digit = value % 3
            coeffs[_LETTERS_PER_COEFFS * i + slot] = digit if digit <= 1 else -1
            value //= 3
    return ConvPoly(coeffs)


def decode_letters(m: ConvPoly) -> str:
    """Inverse of encode_letters; rejects polynomials the encoder cannot emit."""
    digits = []
    for c in m.coeffs:
        if c not in (-1, 0, 1):
            raise CodecError(f"coefficient {c} is not ternary")
        digits.append(c % 3)
    groups = len(digits) // _LETTERS_PER_COEFFS
    symbols: list[int] = []
    padding = False
    for i in range(groups):
        d0, d1, d2 = digits[3 * i : 3 * i + 3]
        value = d0 + 3 * d1 + 9 * d2
        if value == 0:
            padding = True
            continue
        if padding:
            raise CodecError("nonzero letter group after padding began")
        symbols.append(value - 1)
    for c in m.coeffs[groups * _LETTERS_PER_COEFFS :]:
        if c != 0:
            raise CodecError("nonzero coefficient in the incomplete trailing group")
    return symbols_to_text(symbols)
