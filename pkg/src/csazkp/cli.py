"""Command line front end: ``csazkp <command> ...``.

Exit codes: 0 accept/success, 1 reject, 2 usage or I/O error.
Randomness: ``--seed`` if given, else ``$CSAZKP_SEED``, else the OS generator.
"""

import argparse
import os
import random
import socket
import sys
import threading
from pathlib import Path

from .algebra import Algebra, AlgElement, minimal_polynomial
from .construction import DEFAULT_HEIGHT, DEFAULT_ORDER_BOUND, VARIANTS, keygen, keypair_from_parts
from .encoding import decode_value, encode_value, parse_rational
from .errors import CsaError, DecodeError
from .linalg import RatArray
from .signature import sign, verify_signature
from .wire import DEFAULT_TIMEOUT, FdTransport, SessionConfig, SocketTransport, run_session

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2
PUBLIC_FILE = "public.cskey"
SECRET_FILE = "secret.cskey"
SEED_ENV = "CSAZKP_SEED"


class CliError(Exception):
    """Usage or I/O problem; reported and mapped to exit code 2."""


def _rng(seed, salt=""):
    if seed is None:
        seed = os.environ.get(SEED_ENV)
    if seed is None or seed == "":
        return random.SystemRandom()
    return random.Random(f"{seed}{salt}")


def _say(*parts):
    print(*parts, file=sys.stderr, flush=True)


def _read(path):
    try:
        if str(path) == "-":
            return sys.stdin.buffer.read()
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _decode_file(path, kind):
    try:
        return decode_value(_read(path), kind)
    except DecodeError as exc:
        raise CliError(f"{path}: {exc.kind} error: {exc}") from None


def load_public(directory):
    return _decode_file(Path(directory) / PUBLIC_FILE, "public_key")


def load_keypair(directory):
    pk = load_public(directory)
    phi = _decode_file(Path(directory) / SECRET_FILE, "secret_key")
    if phi.source_dim != pk.A0.dim:
        raise CliError("secret key dimension does not match the public key")
    return keypair_from_parts(pk, phi)


def _address(text):
    host, _, port = text.rpartition(":")
    try:
        return host or "127.0.0.1", int(port)
    except ValueError:
        raise CliError(f"bad address {text!r}; expected HOST:PORT") from None


def _config(args):
    return SessionConfig(protocol=args.protocol, rounds=args.rounds, height=args.height, timeout=args.timeout)


# -- commands -------------------------------------------------------------------

def cmd_keygen(args):
    kp = keygen(args.variant, args.k, args.height, _rng(args.seed), order_bound=args.order_bound)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / PUBLIC_FILE).write_bytes(encode_value(kp.public))
        secret = out / SECRET_FILE
        fd = os.open(secret, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
        with os.fdopen(fd, "wb") as fh:
            fh.write(encode_value(kp))
    except OSError as exc:
        raise CliError(f"cannot write keys to {out}: {exc.strerror}") from None
    _say(f"{args.variant} key, k={args.k}, dimension {kp.A0.dim}, fingerprint {kp.public.digest.hex()[:16]}")
    return EXIT_OK


def _report(result, role):
    if result.error:
        _say(f"{role}: session aborted: {result.error}")
    _say(f"{role}: {'accept' if result.accepted else 'reject'}")
    return EXIT_OK if result.accepted else EXIT_REJECT


def cmd_prove(args):
    kp = load_keypair(args.key)
    cfg, rng = _config(args), _rng(args.seed)
    if args.stdio:
        transport = FdTransport(sys.stdin.fileno(), sys.stdout.fileno())
    else:
        try:
            sock = socket.create_connection(_address(args.connect), timeout=args.timeout)
        except OSError as exc:
            raise CliError(f"cannot connect to {args.connect}: {exc}") from None
        transport = SocketTransport(sock)
    try:
        return _report(run_session("prover", transport, cfg, kp, rng), "prover")
    finally:
        transport.close()


def _serve_one(conn, cfg, pk, rng, results, idx):
    transport = SocketTransport(conn)
    try:
        results[idx] = run_session("verifier", transport, cfg, pk, rng)
    finally:
        transport.close()


def cmd_verify(args):
    pk = load_public(args.public)
    cfg = _config(args)
    if args.stdio:
        result = run_session("verifier", FdTransport(sys.stdin.fileno(), sys.stdout.fileno()), cfg, pk, _rng(args.seed))
        return _report(result, "verifier")
    try:
        server = socket.create_server(_address(args.listen))
    except OSError as exc:
        raise CliError(f"cannot listen on {args.listen}: {exc}") from None
    host, port = server.getsockname()[:2]
    _say(f"listening on {host}:{port}")
    results = [None] * args.sessions
    threads = []
    with server:
        for idx in range(args.sessions):
            conn, _ = server.accept()
            t = threading.Thread(target=_serve_one, args=(conn, cfg, pk, _rng(args.seed, f"/{idx}"), results, idx))
            t.start()
            threads.append(t)
        for t in threads:
            t.join()
    codes = [_report(r, f"verifier[{i}]") for i, r in enumerate(results)]
    return max(codes)


def cmd_sign(args):
    kp = load_keypair(args.key)
    if kp.public_element is None:
        raise CliError("key has no public element; regenerate it with keygen")
    sig = sign(kp, _read(args.message), _rng(args.seed))
    try:
        Path(args.out).write_bytes(encode_value(sig))
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


def cmd_verify_sig(args):
    pk = load_public(args.public)
    message = _read(args.message)
    try:
        sig = decode_value(_read(args.sig), "signature")
    except DecodeError as exc:
        _say(f"signature rejected: {exc.kind} error: {exc}")
        return EXIT_REJECT
    ok = verify_signature(pk, message, sig)
    _say("signature valid" if ok else "signature rejected")
    return EXIT_OK if ok else EXIT_REJECT


def _parse_element(text, dim):
    if Path(text).is_file():
        return _decode_file(text, "element")
    try:
        coords = [parse_rational(c.strip() if "/" in c else f"{int(c)}/1") for c in text.split(",")]
    except (DecodeError, ValueError):
        raise CliError(f"cannot parse element {text!r}; use a file or comma-separated rationals") from None
    if len(coords) != dim:
        raise CliError(f"element has {len(coords)} coordinates, algebra has dimension {dim}")
    return AlgElement(RatArray.of(coords))


def _describe(name, A, element_text):
    print(f"{name}: dimension {A.dim}")
    print("  associative: yes, unital: yes")
    print("  identity: (" + ", ".join(str(c) for c in A.identity.coords.entries) + ")")
    if element_text is not None:
        x = _parse_element(element_text, A.dim)
        print(f"  minimal polynomial of element: {minimal_polynomial(A, x)}")
        return
    for i in range(A.dim):
        print(f"  minimal polynomial of b{i}: {minimal_polynomial(A, A.basis(i))}")


def cmd_inspect(args):
    data = _read(args.algebra)
    errors = []
    for kind in ("algebra", "public_key"):
        try:
            value = decode_value(data, kind)
            break
        except DecodeError as exc:
            errors.append(exc)
    else:
        if any(e.kind == "validation" for e in errors):
            bad = next(e for e in errors if e.kind == "validation")
            print(f"not a valid algebra: {bad}")
            return EXIT_REJECT
        raise CliError(f"{args.algebra}: {errors[0].kind} error: {errors[0]}")
    if isinstance(value, Algebra):
        _describe("algebra", value, args.minpoly)
    else:
        print(f"public key: variant {value.variant}, k={value.k}, height {value.height}")
        _describe("A0", value.A0, args.minpoly)
        _describe("A1", value.A1, None)
        if value.element is not None:
            print(f"public element minimal polynomial: {value.element_minpoly}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="csazkp", description="Zero-knowledge identification and signatures from algebra isomorphisms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", help=f"deterministic seed (overrides ${SEED_ENV})")

    def session(p):
        p.add_argument("--rounds", type=_positive, default=10, help="rounds of Protocol 1 (default 10)")
        p.add_argument("--protocol", type=int, choices=(1, 2), default=1)
        p.add_argument("--height", type=_positive, default=None, help="commitment height (default: key height)")
        p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="seconds per frame")
        seeded(p)

    p = sub.add_parser("keygen", help="generate a key directory")
    p.add_argument("--variant", choices=VARIANTS, default="matrix")
    p.add_argument("--k", type=_positive, default=2, help="matrix degree (algebra dimension k^2)")
    p.add_argument("--height", type=_positive, default=DEFAULT_HEIGHT)
    p.add_argument("--order-bound", type=_positive, default=DEFAULT_ORDER_BOUND)
    p.add_argument("--out", required=True, help="output directory")
    seeded(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("prove", help="run the prover side of a session")
    p.add_argument("--key", required=True, help="key directory")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--connect", metavar="ADDR")
    where.add_argument("--stdio", action="store_true")
    session(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="run the verifier side of a session")
    p.add_argument("--public", required=True, help="key directory holding public.cskey")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--listen", metavar="ADDR")
    where.add_argument("--stdio", action="store_true")
    p.add_argument("--sessions", type=_positive, default=1, help="concurrent sessions to serve (with --listen)")
    session(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sign", help="sign a message file")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True, help="message file, or - for stdin")
    p.add_argument("--out", required=True)
    seeded(p)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify-sig", help="check a signature")
    p.add_argument("--public", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_verify_sig)

    p = sub.add_parser("inspect", help="describe an encoded algebra or public key")
    p.add_argument("--algebra", required=True, help="file with an encoded algebra or public key")
    p.add_argument("--minpoly", metavar="ELEMENT", help="element file or comma-separated rationals")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (CliError, CsaError) as exc:
        _say(f"csazkp {args.command}: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
