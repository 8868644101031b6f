"""Command-line surface for reproducible NTRU demos.

Subcommands: keygen, encrypt, decrypt, attack-demo, cipher. Every run is
a pure function of its flags, seed, and input files. When no seed is
given a fresh one is drawn and printed as `seed <n>`, so any run can be
replayed exactly.

Exit codes: 0 success, 1 attack demo fell short of a certain win,
2 usage error, 3 domain error. Domain errors print a single
machine-parseable line `error: <Rule>: <detail>` to stderr.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from .ciphers import (
    CodecError,
    InvalidPermutationError,
    PermutationKey,
    shift_decrypt,
    shift_encrypt,
    substitution_decrypt,
    substitution_encrypt,
    symbols_to_text,
    text_to_symbols,
)
from .files import (
    ParseError,
    decode_letters,
    encode_letters,
    read_ciphertext,
    read_public_key,
    read_secret_key,
    write_ciphertext,
    write_public_key,
    write_secret_key,
)
from .games import (
    NtruGameScheme,
    coin_flip_adversary,
    format_transcript,
    ntru_cpa_adversary,
    run_many,
    summarize_outcomes,
)
from .ring import ConvPoly, InvalidModulusError, NotInvertibleError, RankMismatchError
from .rng import RandomSource
from .scheme import (
    BadBlindingPolynomialError,
    ParamError,
    PlaintextOutOfRangeError,
    PROFILE_GUARANTEED,
    PROFILE_UNCHECKED,
    RetriesExhaustedError,
    decrypt,
    encrypt,
    keygen,
    validate_params,
)
from .ternary import ShapeTooLargeError

__all__ = ["main", "entry", "build_parser"]


class KeyMismatchError(ValueError):
    """Ciphertext and secret key carry different parameter quadruples."""


_DOMAIN_ERRORS = (
    ParamError,
    ParseError,
    PlaintextOutOfRangeError,
    BadBlindingPolynomialError,
    RetriesExhaustedError,
    CodecError,
    InvalidPermutationError,
    RankMismatchError,
    NotInvertibleError,
    InvalidModulusError,
    ShapeTooLargeError,
    KeyMismatchError,
    OSError,
)


def _error_name(exc: BaseException) -> str:
    if isinstance(exc, ParamError):
        return exc.rule
    name = type(exc).__name__
    if name in ("ParseError", "CodecError") or not name.endswith("Error"):
        return name
    return name.removesuffix("Error")


def _resolve_seed(seed) -> int:
    if seed is None:
        seed = secrets.randbits(64)
    print(f"seed {seed}")
    return seed


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=7, help="prime rank N (default 7)")
    parser.add_argument("--p", type=int, default=3, help="small modulus p (default 3)")
    parser.add_argument("--q", type=int, default=41, help="large modulus q (default 41)")
    parser.add_argument("--d", type=int, default=2, help="ternary weight d (default 2)")
    parser.add_argument(
        "--profile",
        choices=[PROFILE_GUARANTEED, PROFILE_UNCHECKED],
        default=PROFILE_GUARANTEED,
        help="parameter profile (default enforces the zero-failure bound)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntrulab",
        description="NTRU laboratory: keys, encryption, and the CPA attack demo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_keygen = sub.add_parser("keygen", help="generate a keypair into two files")
    _add_param_flags(p_keygen)
    p_keygen.add_argument("--seed", type=int, default=None)
    p_keygen.add_argument("--out-prefix", required=True, help="writes PREFIX.pub and PREFIX.sec")

    p_enc = sub.add_parser("encrypt", help="encrypt a plaintext file")
    p_enc.add_argument("--pub", required=True, help="public key file")
    p_enc.add_argument("--in", dest="infile", required=True,
                       help="plaintext file: [c0,c1,...] or letters when p = 3")
    p_enc.add_argument("--seed", type=int, default=None)
    p_enc.add_argument("--out", required=True, help="ciphertext file to write")

    p_dec = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p_dec.add_argument("--sec", required=True, help="secret key file")
    p_dec.add_argument("--in", dest="infile", required=True, help="ciphertext file")
    p_dec.add_argument("--out", required=True, help="plaintext file to write")
    p_dec.add_argument("--letters", action="store_true",
                       help="decode the plaintext with the letters codec (p = 3)")

    p_demo = sub.add_parser("attack-demo", help="run the CPA distinguisher and print a transcript")
    _add_param_flags(p_demo)
    p_demo.add_argument("--trials", type=int, default=100)
    p_demo.add_argument("--seed", type=int, default=None)
    p_demo.add_argument("--baseline", action="store_true",
                        help="use a coin-flip adversary instead of the distinguisher")

    p_cipher = sub.add_parser("cipher", help="toy Z26 ciphers")
    p_cipher.add_argument("kind", choices=["shift", "subst"])
    p_cipher.add_argument("--key", required=True,
                          help="shift: integer 0..25; subst: 26-letter image of a..z")
    p_cipher.add_argument("--text", required=True, help="letters a-z (case folded)")
    p_cipher.add_argument("--decrypt", action="store_true")

    return parser


def _cmd_keygen(args) -> int:
    params = validate_params(args.n, args.p, args.q, args.d, args.profile)
    seed = _resolve_seed(args.seed)
    pk, sk = keygen(params, RandomSource(seed))
    pub_path = f"{args.out_prefix}.pub"
    sec_path = f"{args.out_prefix}.sec"
    write_public_key(pub_path, pk)
    write_secret_key(sec_path, sk)
    print(f"wrote {pub_path}")
    print(f"wrote {sec_path}")
    return 0


def _read_plaintext(path: str, params) -> ConvPoly:
    raw = Path(path).read_text().strip()
    if raw.startswith("["):
        return ConvPoly.from_text(raw)
    if params.p != 3:
        raise CodecError(f"letters input requires p = 3, key file says p = {params.p}")
    return encode_letters(raw, params.n)


def _cmd_encrypt(args) -> int:
    pk = read_public_key(args.pub)
    m = _read_plaintext(args.infile, pk.params)
    seed = _resolve_seed(args.seed)
    e = encrypt(pk.params, pk, m, RandomSource(seed))
    write_ciphertext(args.out, pk.params, e)
    print(f"wrote {args.out}")
    return 0


def _cmd_decrypt(args) -> int:
    sk = read_secret_key(args.sec)
    ct_params, e = read_ciphertext(args.infile)
    if ct_params != sk.params:
        raise KeyMismatchError(
            "ciphertext parameters do not match the secret key's parameters"
        )
    m = decrypt(sk.params, sk, e)
    out_text = decode_letters(m) if args.letters else m.to_text()
    Path(args.out).write_text(out_text + "\n")
    print(f"wrote {args.out}")
    return 0


def _cmd_attack_demo(args) -> int:
    params = validate_params(args.n, args.p, args.q, args.d, args.profile)
    if args.trials < 1:
        raise ParamError("trials must be >= 1")
    seed = _resolve_seed(args.seed)
    rng = RandomSource(seed)
    scheme = NtruGameScheme(params)
    if args.baseline:
        pair = ConvPoly.zero(params.n), ConvPoly.one(params.n)
        adversary = coin_flip_adversary(*pair, rng.spawn())
    else:
        adversary = ntru_cpa_adversary()
    outcomes = run_many(scheme, adversary, args.trials, rng)
    for line in format_transcript(outcomes):
        print(line)
    if args.baseline:
        return 0
    return 0 if summarize_outcomes(outcomes).success_rate == 1.0 else 1


def _cmd_cipher(args) -> int:
    symbols = text_to_symbols(args.text)
    if args.kind == "shift":
        try:
            k = int(args.key)
        except ValueError:
            raise CodecError(f"shift key must be an integer, got {args.key!r}") from None
        if not 0 <= k < 26:
            raise CodecError(f"shift key must be in [0, 26), got {k}")
        out = shift_decrypt(symbols, k) if args.decrypt else shift_encrypt(symbols, k)
    else:
        pi = PermutationKey.from_letters(args.key)
        out = substitution_decrypt(symbols, pi) if args.decrypt else substitution_encrypt(symbols, pi)
    print(symbols_to_text(out))
    return 0


_COMMANDS = {
    "keygen": _cmd_keygen,
    "encrypt": _cmd_encrypt,
    "decrypt": _cmd_decrypt,
    "attack-demo": _cmd_attack_demo,
    "cipher": _cmd_cipher,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {_error_name(exc)}: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
