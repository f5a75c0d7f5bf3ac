"""Command-line interface.

Exit codes: 0 success, 1 usage or I/O error, 2 cryptographic failure
(decryption failure, KEM rejection, failed check).
"""

from __future__ import annotations

import argparse
import random
import sys
import warnings

from . import __version__
from .params import get_params, parse_tuple, validate_params

__all__ = ["main"]

EXIT_OK, EXIT_USAGE, EXIT_CRYPTO = 0, 1, 2
DEMO_MAX_N = 32     # attacks are executed only at desk sizes


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------- plumbing

def _params(args):
    if getattr(args, "params", None):
        try:
            p = parse_tuple(args.params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            p = get_params(args.set)
        except (KeyError, OSError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    v = validate_params(p)
    if not v.correctness_ok:
        raise UsageError("parameters unusable: " + "; ".join(v.correctness))
    return p


def _rng(args):
    if args.seed is None:
        return random.SystemRandom()
    return random.Random(args.seed)


def _read(path, fmt):
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if fmt == "hex":
        try:
            return bytes.fromhex(data.decode("ascii"))
        except (UnicodeDecodeError, ValueError):
            raise UsageError(f"{path} is not valid hex") from None
    return data


def _write(path, data, fmt):
    out = (data.hex() + "\n").encode() if fmt == "hex" else data
    try:
        if path == "-":
            sys.stdout.buffer.write(out)
            sys.stdout.flush()
        else:
            with open(path, "wb") as fh:
                fh.write(out)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def _load_pk(p, args):
    from .pke import deserialize_pk
    try:
        return deserialize_pk(p, _read(args.pk, args.format))
    except ValueError as exc:
        raise UsageError(f"bad public key: {exc}") from None


def _load_sk(p, args):
    from .pke import deserialize_sk
    try:
        return deserialize_sk(p, _read(args.sk, args.format))
    except ValueError as exc:
        raise UsageError(f"bad secret key: {exc}") from None


# ------------------------------------------------------------- commands

def cmd_keygen(args):
    from .pke import keygen, serialize_pk, serialize_sk
    p = _params(args)
    prefix = args.out or "liga"
    sk, pk = keygen(p, _rng(args))
    _write(prefix + ".sk", serialize_sk(sk), args.format)
    _write(prefix + ".pk", serialize_pk(pk), args.format)
    print(f"wrote {prefix}.sk and {prefix}.pk for {p.name}", file=sys.stderr)
    return EXIT_OK


def cmd_encrypt(args):
    from .pke import deserialize_msg, encrypt, serialize_ct
    _need(args, "pk")
    p = _params(args)
    pk = _load_pk(p, args)
    rng = _rng(args)
    theta = rng.randbytes(64)
    K = pk.tower.Fqm
    if args.input is None:
        m = [K.random(rng) for _ in range(p.k - p.u)]
    else:
        try:
            m = deserialize_msg(p, _read(args.input, args.format))
        except ValueError as exc:
            raise UsageError(f"bad message: {exc}") from None
    c = encrypt(m, pk, theta)
    _write(args.out or "-", serialize_ct(p, c), args.format)
    return EXIT_OK


def cmd_decrypt(args):
    from .pke import DecryptionFailure, decrypt, deserialize_ct, serialize_msg
    _need(args, "sk", "pk", "input")
    p = _params(args)
    sk, pk = _load_sk(p, args), _load_pk(p, args)
    try:
        c = deserialize_ct(p, _read(args.input, args.format))
        m = decrypt(c, sk, pk, erasure=args.erasure)
    except (DecryptionFailure, ValueError):
        print("decryption failed", file=sys.stderr)
        return EXIT_CRYPTO
    _write(args.out or "-", serialize_msg(p, m), args.format)
    return EXIT_OK


def cmd_encaps(args):
    from .kem import encaps
    _need(args, "pk", "key")
    p = _params(args)
    pk = _load_pk(p, args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        ct, key = encaps(pk, _rng(args))
    _write(args.out or "-", ct.to_bytes(p), args.format)
    _write(args.key, key, args.format)
    return EXIT_OK


def cmd_decaps(args):
    from .kem import decaps_bytes
    _need(args, "sk", "pk", "input")
    p = _params(args)
    sk, pk = _load_sk(p, args), _load_pk(p, args)
    key = decaps_bytes(_read(args.input, args.format), sk, pk)
    if key is None:
        print("rejected", file=sys.stderr)
        return EXIT_CRYPTO
    _write(args.out or "-", key, args.format)
    return EXIT_OK


def cmd_params_check(args):
    p = _params(args) if not args.params else parse_tuple(args.params)
    v = validate_params(p)
    print(p)
    print(f"  correctness: {'ok' if v.correctness_ok else 'VIOLATED'}")
    for s in v.correctness:
        print(f"    - {s}")
    print(f"  security:    {'ok' if v.security_ok else 'VIOLATED'}")
    for s in v.security:
        print(f"    - {s}")
    for s in v.notes:
        print(f"  note: {s}")
    return EXIT_OK if v.ok else EXIT_CRYPTO


def cmd_security_report(args):
    from .security import work_factors
    p = _params(args)
    r = work_factors(p)
    text = r.to_json() if args.json else r.to_text()
    print(text)
    return EXIT_OK


def cmd_attack_demo(args):
    from .attacks import fl_keygen_original, got_attack, interleaved_attack
    from .pke import keygen
    p = _params(args)
    if p.n > DEMO_MAX_N:
        from .security import work_factors
        r = work_factors(p)
        print(f"{p.name}: attacks are not executed at this size; "
              f"interleaved-decoding search WF = 2^{r.wf['ILD']:.1f}, "
              f"min classical WF = 2^{r.min_wf:.1f} ({r.argmin})")
        return EXIT_OK
    rng = _rng(args)
    attack = got_attack if args.attack == "got" else interleaved_attack
    gen = fl_keygen_original if args.keygen == "original" else keygen
    wins = 0
    for i in range(args.trials):
        _, pk = gen(p, rng)
        out = attack(pk, verify_rng=rng)
        wins += bool(out.success)
        label = "SUCCESS" if out.success else f"FAIL (rank deficit {out.rank_deficit})"
        print(f"trial {i + 1}: {label}")
    print(f"{args.attack} on {args.keygen} keys ({p.name}): {wins}/{args.trials} successful")
    return EXIT_OK


def cmd_selftest(args):
    from .acceptance import run_all
    results = run_all(quick=args.quick)
    return EXIT_OK if all(r.ok for r in results) else EXIT_CRYPTO


# --------------------------------------------------------------- parser

def build_parser():
    common = _Parser(add_help=False)
    g = common.add_mutually_exclusive_group()
    g.add_argument("--set", default="desk", help="named parameter set (default: desk)")
    g.add_argument("--params", help="explicit q,m,n,k,u,w,zeta[,t_pub]")
    common.add_argument("--seed", type=int, help="seed every sampler for reproducible output")
    common.add_argument("--format", choices=("binary", "hex"), default="binary")
    common.add_argument("--in", dest="input", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--pk", metavar="PATH")
    common.add_argument("--sk", metavar="PATH")

    ap = _Parser(prog="liga", description="LIGA rank-metric encryption and KEM")
    ap.add_argument("--version", action="version", version=f"liga {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("keygen", parents=[common], help="write PREFIX.sk and PREFIX.pk (--out PREFIX)")
    s.set_defaults(fn=cmd_keygen)
    s = sub.add_parser("encrypt", parents=[common], help="encrypt a serialized message (random if --in omitted)")
    s.set_defaults(fn=cmd_encrypt)
    s = sub.add_parser("decrypt", parents=[common], help="decrypt a ciphertext")
    s.add_argument("--erasure", action="store_true", help="use the error-erasure decoding route")
    s.set_defaults(fn=cmd_decrypt)
    s = sub.add_parser("encaps", parents=[common], help="encapsulate; ciphertext to --out, key to --key")
    s.add_argument("--key", metavar="PATH")
    s.set_defaults(fn=cmd_encaps)
    s = sub.add_parser("decaps", parents=[common], help="decapsulate --in; key to --out")
    s.set_defaults(fn=cmd_decaps)
    s = sub.add_parser("params-check", parents=[common], help="validate a parameter set")
    s.set_defaults(fn=cmd_params_check)
    s = sub.add_parser("security-report", parents=[common], help="work factors and weak-key bounds")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_security_report)
    s = sub.add_parser("attack-demo", parents=[common], help="run a key-recovery attack at desk size")
    s.add_argument("attack", choices=("got", "interleaved"))
    s.add_argument("--keygen", choices=("original", "liga"), default="liga")
    s.add_argument("--trials", type=int, default=1)
    s.set_defaults(fn=cmd_attack_demo)
    s = sub.add_parser("selftest", help="run the acceptance checks")
    s.add_argument("--quick", action="store_true", help="reduced trial counts")
    s.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"liga: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
