"""Exact arithmetic in the convolution polynomial ring Z[x]/(x^N - 1).

Elements are ConvPoly values: fixed-rank coefficient vectors over the
integers. Multiplication is cyclic convolution (x^N is identified with 1).
Nothing here reduces coefficients implicitly; reduction modulo an integer
and center lifting are explicit operations, so a ConvPoly over Z always
carries exact integers.

Also provides modular inversion against x^N - 1 for prime moduli (extended
Euclidean algorithm over GF(p)) and prime-power moduli (Newton lifting of
the mod-p inverse), which is all NTRU key generation needs.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "ConvPoly",
    "Modulus",
    "RankMismatchError",
    "InvalidModulusError",
    "NotInvertibleError",
    "add",
    "sub",
    "mul",
    "scale",
    "reduce_mod",
    "center_lift",
    "evaluate_at_one",
    "invert_mod_prime",
    "invert_mod_prime_power",
    "is_prime",
]


class RankMismatchError(ValueError):
    """Operands live in rings of different rank N."""


class InvalidModulusError(ValueError):
    """Modulus violates the operation's requirements (e.g. not prime)."""


class NotInvertibleError(ArithmeticError):
    """The element has no inverse modulo the given modulus.

    This is a signal, not a fault: NTRU key generation catches it and
    resamples.
    """


@dataclass(frozen=True)
class Modulus:
    """An integer modulus, at least 2."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 2:
            raise InvalidModulusError(f"modulus must be an integer >= 2, got {self.value!r}")


def _mod_value(m) -> int:
    """Accept a Modulus or a plain int; return the validated integer."""
    if isinstance(m, Modulus):
        return m.value
    if not isinstance(m, int) or m < 2:
        raise InvalidModulusError(f"modulus must be an integer >= 2, got {m!r}")
    return m


class ConvPoly:
    """Element of Z[x]/(x^N - 1): coefficient i belongs to x^i.

    Immutable; coefficients are exact Python integers of any size.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("rank-0 polynomial is not allowed (N must be >= 1)")
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be integers, got {c!r}")
        self.coeffs = coeffs

    @property
    def n(self) -> int:
        """Rank N of the ring this element lives in."""
        return len(self.coeffs)

    @classmethod
    def zero(cls, n: int) -> "ConvPoly":
        return cls((0,) * n)

    @classmethod
    def one(cls, n: int) -> "ConvPoly":
        """The multiplicative identity [1, 0, ..., 0]."""
        return cls((1,) + (0,) * (n - 1))

    @classmethod
    def constant(cls, value: int, n: int) -> "ConvPoly":
        return cls((value,) + (0,) * (n - 1))

    def to_text(self) -> str:
        """Canonical text form: '[c0,c1,...,c_{N-1}]', base-10, no spaces."""
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    @classmethod
    def from_text(cls, text: str) -> "ConvPoly":
        """Parse the '[c0,c1,...]' text form."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"polynomial text must look like [c0,c1,...], got {text!r}")
        body = s[1:-1]
        if not body.strip():
            raise ValueError("polynomial text holds no coefficients")
        try:
            return cls(int(tok) for tok in body.split(","))
        except ValueError as exc:
            raise ValueError(f"bad coefficient in polynomial text {text!r}") from exc

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ConvPoly({list(self.coeffs)})"

    def __add__(self, other: "ConvPoly") -> "ConvPoly":
        return add(self, other)

    def __sub__(self, other: "ConvPoly") -> "ConvPoly":
        return sub(self, other)

    def __neg__(self) -> "ConvPoly":
        return ConvPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, ConvPoly):
            return mul(self, other)
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__


def _check_ranks(a: ConvPoly, b: ConvPoly) -> None:
    if a.n != b.n:
        raise RankMismatchError(f"rank mismatch: {a.n} vs {b.n}")


def add(a: ConvPoly, b: ConvPoly) -> ConvPoly:
    """Coefficientwise sum, exact over Z."""
    _check_ranks(a, b)
    return ConvPoly(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: ConvPoly, b: ConvPoly) -> ConvPoly:
    """Coefficientwise difference, exact over Z."""
    _check_ranks(a, b)
    return ConvPoly(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def scale(a: ConvPoly, k: int) -> ConvPoly:
    """Multiply every coefficient by the integer k."""
    return ConvPoly(tuple(k * c for c in a.coeffs))


def mul(a: ConvPoly, b: ConvPoly) -> ConvPoly:
    """Cyclic convolution product: c_k = sum over i+j = k (mod N) of a_i * b_j.

    Exact over Z; commutative and associative. Zero coefficients are
    skipped, which makes products with sparse ternary polynomials cheap.
    """
    _check_ranks(a, b)
    n = a.n
    out = [0] * n
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj == 0:
                continue
            k = i + j
            if k >= n:
                k -= n
            out[k] += ai * bj
    return ConvPoly(out)


def reduce_mod(a: ConvPoly, m) -> ConvPoly:
    """Reduce every coefficient to its canonical representative in [0, m)."""
    mv = _mod_value(m)
    return ConvPoly(tuple(c % mv for c in a.coeffs))


def center_lift(a: ConvPoly, m) -> ConvPoly:
    """Lift every coefficient to the representative in (-m/2, m/2].

    The half-open interval gives a unique representative for every residue
    class, including even moduli where m/2 itself is kept and -m/2 is not.
    Idempotent.
    """
    mv = _mod_value(m)
    lifted = []
    for c in a.coeffs:
        r = c % mv
        if 2 * r > mv:
            r -= mv
        lifted.append(r)
    return ConvPoly(tuple(lifted))


def evaluate_at_one(a: ConvPoly) -> int:
    """a(1), i.e. the exact sum of the coefficients."""
    return sum(a.coeffs)


def is_prime(n: int) -> bool:
    """Trial-division primality check; fine for the small parameters used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- inversion helpers: variable-length polynomials over GF(p), little-endian,
#     trimmed so the last entry is nonzero ([] is the zero polynomial) ---


def _gf_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_divmod(num: list, den: list, p: int) -> tuple[list, list]:
    """Quotient and remainder of num / den over GF(p); den must be nonzero."""
    num = num[:]
    inv_lead = pow(den[-1], -1, p)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        factor = (num[-1] * inv_lead) % p
        quo[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * d) % p
        _gf_trim(num)
    return quo, num


def _gf_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _gf_trim(out)


def _gf_sub(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x - y) % p
    return _gf_trim(out)


def invert_mod_prime(a: ConvPoly, p) -> ConvPoly:
    """Inverse of a modulo (p, x^N - 1) for prime p.

    Runs the extended Euclidean algorithm on a and x^N - 1 over GF(p);
    the inverse exists exactly when their gcd is a nonzero constant.
    Raises NotInvertibleError otherwise (in particular for any a with
    a(1) divisible by p, since x - 1 then divides both arguments).
    """
    pv = _mod_value(p)
    if not is_prime(pv):
        raise InvalidModulusError(f"modulus {pv} is not prime")
    n = a.n
    r0 = _gf_trim([c % pv for c in a.coeffs])
    if not r0:
        raise NotInvertibleError("zero polynomial has no inverse")
    # x^N - 1 over GF(p)
    r1 = [(pv - 1)] + [0] * (n - 1) + [1]
    s0, s1 = [1], []
    while r1:
        quo, rem = _gf_divmod(r0, r1, pv)
        r0, r1 = r1, rem
        s0, s1 = s1, _gf_sub(s0, _gf_mul(quo, s1, pv), pv)
    if len(r0) != 1:
        raise NotInvertibleError("gcd with x^N - 1 is not constant")
    inv_const = pow(r0[0], -1, pv)
    inv = [(c * inv_const) % pv for c in s0]
    # fold back into rank N (degree of s0 is already < N, but be safe)
    out = [0] * n
    for i, c in enumerate(inv):
        out[i % n] = (out[i % n] + c) % pv
    return ConvPoly(tuple(out))


def invert_mod_prime_power(a: ConvPoly, p, k: int) -> ConvPoly:
    """Inverse of a modulo (p^k, x^N - 1) for prime p and k >= 1.

    Inverts mod p first, then Newton-lifts F <- F * (2 - a * F), doubling
    the precision each round until it reaches p^k. Supports the usual
    q = 2^k NTRU parameter choices with a handful of ring products.
    """
    pv = _mod_value(p)
    if not isinstance(k, int) or k < 1:
        raise InvalidModulusError(f"exponent must be a positive integer, got {k!r}")
    f_inv = invert_mod_prime(a, pv)  # raises NotInvertibleError / InvalidModulusError
    if k == 1:
        return f_inv
    two = ConvPoly.constant(2, a.n)
    exp = 1
    while exp < k:
        exp = min(2 * exp, k)
        modulus = pv**exp
        correction = sub(two, mul(a, f_inv))
        f_inv = reduce_mod(mul(f_inv, correction), modulus)
    return f_inv
