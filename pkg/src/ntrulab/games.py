"""Generic IND-CPA and IND-CCA2 indistinguishability experiments.

The harness drives any scheme exposing the keygen/encrypt/decrypt triple
through the standard game: the adversary names two distinct valid
plaintexts, a hidden bit selects which one is encrypted into the
challenge ciphertext, and the adversary wins by guessing the bit. The
CCA2 variant adds a decryption oracle that answers everything except the
challenge itself; a CCA1 flag closes that oracle once the challenge is
issued.

Also included: the concrete NTRU distinguisher that wins the CPA game
with probability one by evaluating the challenge at x = 1 (ciphertexts
leak m(1) mod q because the blinding terms vanish at 1), plus baseline
adversaries and adapters that let the toy Z_26 ciphers play in the same
harness. A symmetric scheme is adapted by handing the adversary the
encryption oracle but never the key.

Adversaries here are synchronous single-shot strategy objects. No
running-time bound is enforced; polynomial time is a modeling assumption
this harness cannot measure.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable

from . import ciphers
from .ring import ConvPoly, evaluate_at_one
from .rng import RandomSource
from .scheme import NtruParams, NtruPublicKey
from . import scheme as ntru

__all__ = [
    "CHALLENGE_REFUSED",
    "AdversaryContractViolation",
    "SchemeUnderTest",
    "Adversary",
    "OracleSet",
    "GameOutcome",
    "AdvantageEstimate",
    "run_ind_cpa",
    "run_ind_cca2",
    "run_many",
    "summarize_outcomes",
    "estimate_advantage",
    "format_transcript",
    "ntru_cpa_adversary",
    "coin_flip_adversary",
    "oracle_replay_adversary",
    "NtruGameScheme",
    "ShiftCipherGameScheme",
    "SubstitutionCipherGameScheme",
]


class AdversaryContractViolation(RuntimeError):
    """The adversary broke the experiment's rules (equal or invalid messages)."""


class _Refused:
    """Sentinel returned by the decryption oracle instead of an answer."""

    def __repr__(self):
        return "CHALLENGE_REFUSED"


CHALLENGE_REFUSED = _Refused()


class SchemeUnderTest(ABC):
    """Keygen/encrypt/decrypt triple the experiments can drive.

    For public-key schemes pk is the actual public key. For symmetric
    schemes pk is an opaque encryption handle: the harness can encrypt
    with it, and cooperating adversaries use only the oracles.
    """

    @abstractmethod
    def keygen(self, rng: RandomSource) -> tuple[Any, Any]:
        """Return (pk, sk)."""

    @abstractmethod
    def encrypt(self, pk, m, rng: RandomSource):
        """Encrypt m under pk."""

    @abstractmethod
    def decrypt(self, sk, c):
        """Decrypt c, or return None for an invalid ciphertext."""

    @abstractmethod
    def is_valid_plaintext(self, m) -> bool:
        """Predicate the adversary's chosen messages must satisfy."""


class Adversary(ABC):
    """Single-shot strategy: pick two messages, then guess the hidden bit."""

    @abstractmethod
    def choose_messages(self, pk, oracles: "OracleSet") -> tuple[Any, Any]:
        """Return (m0, m1), distinct and valid for the scheme."""

    @abstractmethod
    def guess(self, pk, challenge, oracles: "OracleSet") -> int:
        """Return the guessed bit."""


class OracleSet:
    """Counting wrappers around the challenger's encryption and decryption.

    The decryption oracle, when present, refuses the challenge ciphertext
    once it has been issued and refuses everything after close() in a
    CCA1 run. Refusals return CHALLENGE_REFUSED and are counted, never
    raised.
    """

    def __init__(self, enc_fn: Callable, dec_fn: Callable | None = None):
        self._enc_fn = enc_fn
        self._dec_fn = dec_fn
        self._challenge = None
        self._challenge_set = False
        self._closed = False
        self.enc_calls = 0
        self.dec_calls = 0
        self.dec_refusals = 0

    @property
    def has_decryption(self) -> bool:
        return self._dec_fn is not None

    def encrypt(self, m):
        self.enc_calls += 1
        return self._enc_fn(m)

    def decrypt(self, c):
        if self._dec_fn is None:
            raise LookupError("this experiment grants no decryption oracle")
        if self._closed or (self._challenge_set and c == self._challenge):
            self.dec_refusals += 1
            return CHALLENGE_REFUSED
        self.dec_calls += 1
        return self._dec_fn(c)

    def _set_challenge(self, c) -> None:
        self._challenge = c
        self._challenge_set = True

    def _close_decryption(self) -> None:
        self._closed = True


@dataclass(frozen=True)
class GameOutcome:
    """Transcript of one experiment run."""

    hidden_bit: int
    guess: int
    m0: Any
    m1: Any
    challenge: Any
    enc_calls: int
    dec_calls: int
    dec_refusals: int

    @property
    def win(self) -> bool:
        return self.hidden_bit == self.guess


def _checked_messages(scheme: SchemeUnderTest, adversary: Adversary, pk, oracles):
    m0, m1 = adversary.choose_messages(pk, oracles)
    if not scheme.is_valid_plaintext(m0) or not scheme.is_valid_plaintext(m1):
        raise AdversaryContractViolation("adversary chose an invalid plaintext")
    if m0 == m1:
        raise AdversaryContractViolation("adversary chose equal messages")
    return m0, m1


def _checked_bit(value) -> int:
    if value not in (0, 1):
        raise AdversaryContractViolation(f"adversary guess must be a bit, got {value!r}")
    return int(value)


def _finish(scheme, adversary, pk, oracles, b, challenge, m0, m1) -> GameOutcome:
    guess = _checked_bit(adversary.guess(pk, challenge, oracles))
    return GameOutcome(
        hidden_bit=b,
        guess=guess,
        m0=m0,
        m1=m1,
        challenge=challenge,
        enc_calls=oracles.enc_calls,
        dec_calls=oracles.dec_calls,
        dec_refusals=oracles.dec_refusals,
    )


def run_ind_cpa(scheme: SchemeUnderTest, adversary: Adversary, rng: RandomSource) -> GameOutcome:
    """One CPA indistinguishability experiment.

    Steps: keygen; the adversary picks (m0, m1) with encryption-oracle
    access; a uniform hidden bit selects m_b; the challenge ciphertext is
    its encryption; the adversary guesses with continued oracle access.
    """
    pk, _sk = scheme.keygen(rng)
    oracles = OracleSet(lambda m: scheme.encrypt(pk, m, rng))
    m0, m1 = _checked_messages(scheme, adversary, pk, oracles)
    b = rng.bit()
    challenge = scheme.encrypt(pk, m1 if b else m0, rng)
    return _finish(scheme, adversary, pk, oracles, b, challenge, m0, m1)


def run_ind_cca2(
    scheme: SchemeUnderTest,
    adversary: Adversary,
    rng: RandomSource,
    cca1: bool = False,
) -> GameOutcome:
    """One CCA indistinguishability experiment.

    Like the CPA run but with a decryption oracle available before and
    after the challenge. Decrypting the challenge itself is refused and
    the refusal recorded. With cca1=True (the lunchtime variant) the
    decryption oracle closes as soon as the challenge is issued.
    """
    pk, sk = scheme.keygen(rng)
    oracles = OracleSet(
        lambda m: scheme.encrypt(pk, m, rng),
        lambda c: scheme.decrypt(sk, c),
    )
    m0, m1 = _checked_messages(scheme, adversary, pk, oracles)
    b = rng.bit()
    challenge = scheme.encrypt(pk, m1 if b else m0, rng)
    oracles._set_challenge(challenge)
    if cca1:
        oracles._close_decryption()
    return _finish(scheme, adversary, pk, oracles, b, challenge, m0, m1)


_VARIANTS = {
    "cpa": run_ind_cpa,
    "cca2": run_ind_cca2,
    "cca1": lambda scheme, adversary, rng: run_ind_cca2(scheme, adversary, rng, cca1=True),
}


def run_many(
    scheme: SchemeUnderTest,
    adversary: Adversary,
    trials: int,
    rng: RandomSource,
    variant: str = "cpa",
) -> list[GameOutcome]:
    """Run the chosen experiment repeatedly, one spawned seed per run."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    run = _VARIANTS[variant]
    return [run(scheme, adversary, rng.spawn()) for _ in range(trials)]


@dataclass(frozen=True)
class AdvantageEstimate:
    """Empirical success rate with a two-sided 95% Wilson score interval.

    The excess over one half is the finite-sample stand-in for the
    adversary's advantage.
    """

    trials: int
    wins: int
    success_rate: float
    interval_low: float
    interval_high: float

    @property
    def excess(self) -> float:
        return self.success_rate - 0.5


_Z95 = 1.959963984540054


def summarize_outcomes(outcomes) -> AdvantageEstimate:
    trials = len(outcomes)
    wins = sum(1 for o in outcomes if o.win)
    rate = wins / trials
    z2 = _Z95 * _Z95
    denom = 1.0 + z2 / trials
    center = (rate + z2 / (2 * trials)) / denom
    half = _Z95 * math.sqrt(rate * (1.0 - rate) / trials + z2 / (4 * trials * trials)) / denom
    return AdvantageEstimate(
        trials=trials,
        wins=wins,
        success_rate=rate,
        interval_low=max(0.0, center - half),
        interval_high=min(1.0, center + half),
    )


def estimate_advantage(
    scheme: SchemeUnderTest,
    adversary: Adversary,
    trials: int,
    rng: RandomSource,
    variant: str = "cpa",
) -> AdvantageEstimate:
    """Empirical success rate of the adversary over independent seeded runs."""
    return summarize_outcomes(run_many(scheme, adversary, trials, rng, variant))


def format_transcript(outcomes) -> list[str]:
    """One line per run plus a summary line, in the documented text form."""
    lines = [
        f"run {i} b {o.hidden_bit} b' {o.guess} win {int(o.win)} "
        f"enc_calls {o.enc_calls} dec_calls {o.dec_calls}"
        for i, o in enumerate(outcomes)
    ]
    est = summarize_outcomes(outcomes)
    lines.append(f"trials {est.trials} wins {est.wins} rate {est.success_rate}")
    return lines


# --- concrete adversaries ---


class _NtruEvalAdversary(Adversary):
    """Wins the CPA game against textbook NTRU every single run.

    Picks m0 = 0 and m1 = 1 so that m0(1) and m1(1) differ mod q, then
    evaluates the challenge at x = 1: the ciphertext satisfies
    e(1) = m_b(1) mod q because h(1) = r(1) = 0, so the hidden bit is
    read straight off the challenge.
    """

    def choose_messages(self, pk: NtruPublicKey, oracles):
        n = pk.params.n
        return ConvPoly.zero(n), ConvPoly.one(n)

    def guess(self, pk: NtruPublicKey, challenge: ConvPoly, oracles) -> int:
        leaked = evaluate_at_one(challenge) % pk.params.q
        return 1 if leaked == 1 % pk.params.q else 0


def ntru_cpa_adversary() -> Adversary:
    """The evaluate-at-one distinguisher for NTRU public keys."""
    return _NtruEvalAdversary()


class _CoinFlipAdversary(Adversary):
    """Baseline: fixed message pair, uniformly random guess."""

    def __init__(self, m0, m1, rng: RandomSource):
        self._m0 = m0
        self._m1 = m1
        self._rng = rng

    def choose_messages(self, pk, oracles):
        return self._m0, self._m1

    def guess(self, pk, challenge, oracles) -> int:
        return self._rng.bit()


def coin_flip_adversary(m0, m1, rng: RandomSource) -> Adversary:
    """An adversary with no strategy at all; calibrates the harness at 1/2."""
    return _CoinFlipAdversary(m0, m1, rng)


class _OracleReplayAdversary(Adversary):
    """Replays m0 through the encryption oracle and compares ciphertexts.

    Wins with certainty against any deterministic scheme under a reused
    key, which is exactly the weakness of the toy Z_26 ciphers.
    """

    def __init__(self, m0, m1):
        self._m0 = m0
        self._m1 = m1

    def choose_messages(self, pk, oracles):
        return self._m0, self._m1

    def guess(self, pk, challenge, oracles) -> int:
        return 0 if oracles.encrypt(self._m0) == challenge else 1


def oracle_replay_adversary(m0, m1) -> Adversary:
    return _OracleReplayAdversary(m0, m1)


# --- scheme adapters ---


class NtruGameScheme(SchemeUnderTest):
    """NTRU at a fixed parameter set, plaintexts and ciphertexts as ConvPoly."""

    def __init__(self, params: NtruParams):
        self.params = params

    def keygen(self, rng):
        return ntru.keygen(self.params, rng)

    def encrypt(self, pk, m, rng):
        return ntru.encrypt(self.params, pk, m, rng)

    def decrypt(self, sk, c):
        return ntru.decrypt(self.params, sk, c)

    def is_valid_plaintext(self, m) -> bool:
        return isinstance(m, ConvPoly) and ntru.is_valid_plaintext(self.params, m)


@dataclass(frozen=True)
class _SymmetricHandle:
    """Encryption handle for a symmetric key in the public-key harness.

    Cooperating adversaries treat it as opaque; only the challenger's
    encryption closure reads the key out of it.
    """

    _key: Any = field(repr=False)


class ShiftCipherGameScheme(SchemeUnderTest):
    """Shift cipher on fixed-length texts, adapted into the harness."""

    def __init__(self, length: int):
        if length < 1:
            raise ValueError("length must be >= 1")
        self.length = length

    def keygen(self, rng):
        k = rng.randrange(ciphers.ALPHABET_SIZE)
        return _SymmetricHandle(k), k

    def encrypt(self, pk, m, rng):
        return ciphers.shift_encrypt(m, pk._key)

    def decrypt(self, sk, c):
        return ciphers.shift_decrypt(c, sk)

    def is_valid_plaintext(self, m) -> bool:
        return (
            isinstance(m, list)
            and len(m) == self.length
            and all(isinstance(s, int) and 0 <= s < ciphers.ALPHABET_SIZE for s in m)
        )


class SubstitutionCipherGameScheme(SchemeUnderTest):
    """Substitution cipher on fixed-length texts, adapted into the harness."""

    def __init__(self, length: int):
        if length < 1:
            raise ValueError("length must be >= 1")
        self.length = length

    def keygen(self, rng):
        pi = ciphers.PermutationKey.random(rng)
        return _SymmetricHandle(pi), pi

    def encrypt(self, pk, m, rng):
        return ciphers.substitution_encrypt(m, pk._key)

    def decrypt(self, sk, c):
        return ciphers.substitution_decrypt(c, sk)

    def is_valid_plaintext(self, m) -> bool:
        return (
            isinstance(m, list)
            and len(m) == self.length
            and all(isinstance(s, int) and 0 <= s < ciphers.ALPHABET_SIZE for s in m)
        )
