"""Textbook NTRU over Z[x]/(x^N - 1): parameters, keygen, encrypt, decrypt.

Public parameters are (N, p, q, d). Alice samples f from T(d+1, d) and
g from T(d, d), requires f invertible mod p and mod q, and publishes
h = f^-1 * g computed mod q. Bob encrypts a small-coefficient message m as

    e = p * h * r + m  (mod q),    r fresh from T(d, d).

Alice decrypts by computing a = f * e mod q, center lifting a, and then
b = F_p * a mod p, center lifted into the plaintext range. When
q > (6d + 1) * p the lifted intermediate equals p*g*r + f*m exactly over
the integers, so decryption is correct with zero failure probability.
That bound is enforced by the default "guaranteed" parameter profile; the
"unchecked" profile admits historical parameter sets where decryption
failure was a (rare) possibility.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ring import (
    ConvPoly,
    InvalidModulusError,
    NotInvertibleError,
    add,
    center_lift,
    invert_mod_prime,
    invert_mod_prime_power,
    is_prime,
    mul,
    reduce_mod,
    scale,
)
from .rng import RandomSource
from .ternary import TernaryShape, is_member, sample_ternary

__all__ = [
    "PROFILE_GUARANTEED",
    "PROFILE_UNCHECKED",
    "KEYGEN_RETRY_CAP",
    "NtruParams",
    "NtruPublicKey",
    "NtruSecretKey",
    "ParamError",
    "NotPrimeNError",
    "UnsupportedModulusError",
    "GcdViolationError",
    "DegenerateWeightError",
    "WeightTooLargeError",
    "DecryptionBoundViolationError",
    "PlaintextOutOfRangeError",
    "BadBlindingPolynomialError",
    "RetriesExhaustedError",
    "validate_params",
    "is_valid_plaintext",
    "keygen",
    "encrypt",
    "encrypt_with_r",
    "decrypt",
    "decrypt_trace",
]

PROFILE_GUARANTEED = "guaranteed"
PROFILE_UNCHECKED = "unchecked"

# Invertibility failures are rare, so a generous cap turns a theoretical
# infinite resampling loop into a diagnosable error.
KEYGEN_RETRY_CAP = 128


class ParamError(ValueError):
    """A parameter quadruple violates one of the validity rules."""

    rule = "ParamError"


class NotPrimeNError(ParamError):
    rule = "NotPrimeN"


class UnsupportedModulusError(ParamError):
    """p and q must each be prime or a power of two so inverses are defined."""

    rule = "UnsupportedModulus"


class GcdViolationError(ParamError):
    rule = "GcdViolation"


class DegenerateWeightError(ParamError):
    """d = 0 would make T(d, d) = {0} and encryption deterministic."""

    rule = "DegenerateWeight"


class WeightTooLargeError(ParamError):
    """T(d+1, d) needs 2d + 1 coefficient slots, so 2d + 1 <= N."""

    rule = "WeightTooLarge"


class DecryptionBoundViolationError(ParamError):
    rule = "DecryptionBoundViolation"


class PlaintextOutOfRangeError(ValueError):
    """A plaintext coefficient lies outside (-p/2, p/2]."""


class BadBlindingPolynomialError(ValueError):
    """The supplied blinding polynomial is not a member of T(d, d)."""


class RetriesExhaustedError(RuntimeError):
    """Key generation failed to find an invertible f within the retry cap."""


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _prime_power_split(m: int) -> tuple[int, int] | None:
    """Return (p, k) with m = p^k for p prime, or None.

    Only the supported shapes are recognized: m prime (k = 1) or m a
    power of two.
    """
    if m >= 2 and m & (m - 1) == 0:
        return 2, m.bit_length() - 1
    if is_prime(m):
        return m, 1
    return None


@dataclass(frozen=True)
class NtruParams:
    """Validated public parameter quadruple (N, p, q, d).

    Construct through validate_params; the constructor itself performs no
    checking.
    """

    n: int
    p: int
    q: int
    d: int
    profile: str = PROFILE_GUARANTEED

    @property
    def plaintext_range(self) -> tuple[int, int]:
        """Integer bounds [lo, hi] of the plaintext interval (-p/2, p/2]."""
        return -((self.p - 1) // 2), self.p // 2


def validate_params(n: int, p: int, q: int, d: int, profile: str = PROFILE_GUARANTEED) -> NtruParams:
    """Check the parameter rules in order and return a validated NtruParams.

    Raises the ParamError subclass naming the first violated rule:
    NotPrimeN, UnsupportedModulus, GcdViolation, DegenerateWeight,
    WeightTooLarge, then (guaranteed profile only) DecryptionBoundViolation.
    """
    if profile not in (PROFILE_GUARANTEED, PROFILE_UNCHECKED):
        raise ParamError(f"unknown profile {profile!r}")
    for name, value in (("N", n), ("p", p), ("q", q), ("d", d)):
        if not isinstance(value, int) or value < 0:
            raise ParamError(f"{name} must be a nonnegative integer, got {value!r}")
    if not is_prime(n):
        raise NotPrimeNError(f"N = {n} is not prime")
    for name, m in (("p", p), ("q", q)):
        if _prime_power_split(m) is None:
            raise UnsupportedModulusError(
                f"{name} = {m} is neither prime nor a power of two"
            )
    if _gcd(n, q) != 1:
        raise GcdViolationError(f"gcd(N, q) = {_gcd(n, q)} != 1")
    if _gcd(p, q) != 1:
        raise GcdViolationError(f"gcd(p, q) = {_gcd(p, q)} != 1")
    if d == 0:
        raise DegenerateWeightError("d = 0 makes encryption deterministic")
    if 2 * d + 1 > n:
        raise WeightTooLargeError(f"2d + 1 = {2 * d + 1} exceeds N = {n}")
    if profile == PROFILE_GUARANTEED and q <= (6 * d + 1) * p:
        raise DecryptionBoundViolationError(
            f"q = {q} does not exceed (6d + 1) * p = {(6 * d + 1) * p}"
        )
    return NtruParams(n=n, p=p, q=q, d=d, profile=profile)


@dataclass(frozen=True)
class NtruPublicKey:
    """Public key: h with coefficients canonical mod q, plus the parameters."""

    params: NtruParams
    h: ConvPoly


@dataclass(frozen=True)
class NtruSecretKey:
    """Secret pair (f, F_p) with f in T(d+1, d) and f * F_p = 1 mod p."""

    params: NtruParams
    f: ConvPoly
    fp: ConvPoly


def _invert(a: ConvPoly, m: int) -> ConvPoly:
    """Inverse of a mod (m, x^N - 1) for m prime or a prime power."""
    split = _prime_power_split(m)
    if split is None:
        raise InvalidModulusError(f"modulus {m} is neither prime nor a power of two")
    base, exponent = split
    if exponent == 1:
        return invert_mod_prime(a, base)
    return invert_mod_prime_power(a, base, exponent)


def keygen(params: NtruParams, rng: RandomSource) -> tuple[NtruPublicKey, NtruSecretKey]:
    """Generate a keypair, resampling f until it is invertible mod p and mod q."""
    n, p, q, d = params.n, params.p, params.q, params.d
    f_shape = TernaryShape(d + 1, d, n)
    for _ in range(KEYGEN_RETRY_CAP):
        f = sample_ternary(f_shape, rng)
        try:
            fp = _invert(f, p)
            fq = _invert(f, q)
        except NotInvertibleError:
            continue
        break
    else:
        raise RetriesExhaustedError(
            f"no invertible f found in {KEYGEN_RETRY_CAP} samples from T({d + 1},{d})"
        )
    g = sample_ternary(TernaryShape(d, d, n), rng)
    h = reduce_mod(mul(fq, g), q)
    return NtruPublicKey(params, h), NtruSecretKey(params, f, fp)


def is_valid_plaintext(params: NtruParams, m: ConvPoly) -> bool:
    """True iff m has rank N and every coefficient lies in (-p/2, p/2]."""
    if m.n != params.n:
        return False
    p = params.p
    return all(-p < 2 * c <= p for c in m.coeffs)


def _check_plaintext(params: NtruParams, m: ConvPoly) -> None:
    if not is_valid_plaintext(params, m):
        raise PlaintextOutOfRangeError(
            f"plaintext must have rank {params.n} and coefficients in "
            f"(-{params.p}/2, {params.p}/2], got {m.to_text()}"
        )


def encrypt_with_r(params: NtruParams, pk: NtruPublicKey, m: ConvPoly, r: ConvPoly) -> ConvPoly:
    """Deterministic encryption with a caller-supplied blinding polynomial.

    Computes p * (h * r) + m exactly over Z, then reduces mod q. Used by
    tests and game transcripts that need to pin r.
    """
    _check_plaintext(params, m)
    if r.n != params.n or not is_member(r, TernaryShape(params.d, params.d, params.n)):
        raise BadBlindingPolynomialError(
            f"blinding polynomial must come from T({params.d},{params.d}) at rank {params.n}"
        )
    return reduce_mod(add(scale(mul(pk.h, r), params.p), m), params.q)


def encrypt(params: NtruParams, pk: NtruPublicKey, m: ConvPoly, rng: RandomSource) -> ConvPoly:
    """Encrypt m under pk with a fresh blinding polynomial from T(d, d)."""
    _check_plaintext(params, m)
    r = sample_ternary(TernaryShape(params.d, params.d, params.n), rng)
    return encrypt_with_r(params, pk, m, r)


def decrypt_trace(
    params: NtruParams, sk: NtruSecretKey, e: ConvPoly
) -> tuple[ConvPoly, ConvPoly]:
    """Decrypt and also expose the center-lifted intermediate a = f * e.

    In the guaranteed profile the lifted a equals p*g*r + f*m exactly over
    the integers, which is what makes the final mod-p step recover m.
    """
    a = reduce_mod(mul(sk.f, e), params.q)
    a_lifted = center_lift(a, params.q)
    b = center_lift(reduce_mod(mul(sk.fp, a_lifted), params.p), params.p)
    return a_lifted, b


def decrypt(params: NtruParams, sk: NtruSecretKey, e: ConvPoly) -> ConvPoly:
    """Recover the plaintext from e.

    Exact in the guaranteed profile. In the unchecked profile an
    oversized intermediate coefficient can silently produce a wrong
    plaintext; that possibility is the reason the profile exists.
    """
    _, b = decrypt_trace(params, sk, e)
    return b
