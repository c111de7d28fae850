"""Framed prover/verifier sessions over an ordered byte stream.

A frame is a 4-byte big-endian length followed by a message body: one type
byte, a 16-byte session id, then the payload.  Payloads are canonical
encodings (commitments, maps, elements) or short ASCII tokens (challenge
bits, verdicts, error text).

Message order, Protocol 1 with l rounds::

    P -> V  HELLO          V -> P  HELLO (echo)
    P -> V  COMMITMENT     V -> P  CHALLENGE_BIT     P -> V  RESPONSE_ISO   (l times)
    V -> P  VERDICT

Protocol 2 replaces the rounds with COMMITMENT, P2_CHALLENGE, P2_RESPONSE.
Any violation aborts the session: the side that notices sends ERROR, and
a verifier always closes with a reject VERDICT.
"""

import json
import os
import select
import socket
import struct
import time
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional

from .algebra import verify_isomorphism
from .encoding import decode_value, encode_value
from .errors import (
    CsaError,
    FramingError,
    SessionError,
    SessionTimeout,
    StateError,
    UsageError,
)
from .protocol import (
    Transcript1,
    Transcript2,
    p1_commit,
    p1_respond,
    p1_verify,
    p2_challenge,
    p2_respond,
    p2_verify,
)
from .signature import HASH_NAME

WIRE_VERSION = 1
MAX_FRAME = 64 * 1024 * 1024
DEFAULT_TIMEOUT = 30.0
SESSION_ID_BYTES = 16
MAX_ERROR_TEXT = 1024
_LENGTH = struct.Struct(">I")


class MsgType(IntEnum):
    HELLO = 1
    COMMITMENT = 2
    CHALLENGE_BIT = 3
    RESPONSE_ISO = 4
    P2_CHALLENGE = 5
    P2_RESPONSE = 6
    VERDICT = 7
    ERROR = 8


@dataclass(frozen=True)
class WireMessage:
    type: MsgType
    session_id: bytes
    payload: bytes = b""

    def to_bytes(self):
        return bytes([self.type]) + self.session_id + self.payload

    @classmethod
    def from_bytes(cls, body):
        if len(body) < 1 + SESSION_ID_BYTES:
            raise FramingError(f"frame body of {len(body)} bytes is shorter than the header")
        try:
            kind = MsgType(body[0])
        except ValueError:
            raise FramingError(f"unknown message type {body[0]}") from None
        return cls(kind, bytes(body[1 : 1 + SESSION_ID_BYTES]), bytes(body[1 + SESSION_ID_BYTES :]))

    def frame(self):
        body = self.to_bytes()
        return _LENGTH.pack(len(body)) + body


# -- transports -----------------------------------------------------------------

class Transport:
    """Ordered reliable byte stream with per-read deadlines."""

    def send(self, data):
        raise NotImplementedError

    def _read_some(self, n, timeout):
        raise NotImplementedError

    def read_exact(self, n, timeout):
        chunks, need = [], n
        deadline = None if timeout is None else time.monotonic() + timeout
        while need:
            left = None if deadline is None else deadline - time.monotonic()
            if left is not None and left <= 0:
                raise SessionTimeout(f"timed out waiting for {need} more bytes")
            chunk = self._read_some(need, left)
            if not chunk:
                raise FramingError("stream closed mid-frame" if chunks or need < n else "stream closed")
            chunks.append(chunk)
            need -= len(chunk)
        return b"".join(chunks)

    def close(self):
        pass


class SocketTransport(Transport):
    def __init__(self, sock):
        self.sock = sock

    def send(self, data):
        self.sock.sendall(data)

    def _read_some(self, n, timeout):
        self.sock.settimeout(timeout)
        try:
            return self.sock.recv(min(n, 1 << 20))
        except socket.timeout:
            raise SessionTimeout("socket read timed out") from None

    def close(self):
        try:
            self.sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self.sock.close()


class FdTransport(Transport):
    """A pair of file descriptors, e.g. a child process's pipes or stdio."""

    def __init__(self, read_fd, write_fd):
        self.read_fd = read_fd
        self.write_fd = write_fd

    def send(self, data):
        view = memoryview(data)
        while view:
            view = view[os.write(self.write_fd, view) :]

    def _read_some(self, n, timeout):
        ready, _, _ = select.select([self.read_fd], [], [], timeout)
        if not ready:
            raise SessionTimeout("pipe read timed out")
        return os.read(self.read_fd, min(n, 1 << 20))


class BufferTransport(Transport):
    """Reads from a fixed byte string and records what is sent.

    Used to replay captured or mutated traffic against one side.
    """

    def __init__(self, incoming=b""):
        self.incoming = bytes(incoming)
        self.pos = 0
        self.sent = bytearray()

    def send(self, data):
        self.sent += data

    def _read_some(self, n, timeout):
        chunk = self.incoming[self.pos : self.pos + n]
        self.pos += len(chunk)
        return chunk


def socket_pair():
    """Two connected in-process transports."""
    a, b = socket.socketpair()
    return SocketTransport(a), SocketTransport(b)


def read_message(transport, timeout=DEFAULT_TIMEOUT, max_frame=MAX_FRAME):
    (length,) = _LENGTH.unpack(transport.read_exact(_LENGTH.size, timeout))
    if length > max_frame:
        raise FramingError(f"declared frame length {length} exceeds the {max_frame}-byte cap")
    return WireMessage.from_bytes(transport.read_exact(length, timeout))


# -- sessions -------------------------------------------------------------------

@dataclass(frozen=True)
class SessionConfig:
    protocol: int = 1
    rounds: int = 10
    height: Optional[int] = None
    timeout: float = DEFAULT_TIMEOUT
    hash_name: str = HASH_NAME
    max_frame: int = MAX_FRAME
    compact: bool = True

    def __post_init__(self):
        if self.protocol not in (1, 2):
            raise UsageError("protocol must be 1 or 2")
        if self.protocol == 1 and self.rounds < 1:
            raise UsageError("protocol 1 needs at least one round")


@dataclass
class SessionResult:
    accepted: bool
    transcripts: list = field(default_factory=list)
    frames: list = field(default_factory=list)
    error: Optional[str] = None


def hello_payload(pk, config):
    info = {
        "protocol": config.protocol,
        "variant": pk.variant,
        "k": pk.k,
        "rounds": config.rounds if config.protocol == 1 else 1,
        "hash": config.hash_name,
        "public": pk.digest.hex(),
    }
    return bytes([WIRE_VERSION]) + json.dumps(info, separators=(",", ":")).encode("ascii")


class _Channel:
    def __init__(self, transport, config, session_id=None):
        self.transport = transport
        self.config = config
        self.session_id = session_id
        self.frames = []

    def send(self, kind, payload=b""):
        msg = WireMessage(kind, self.session_id, payload)
        self.frames.append(("out", msg))
        self.transport.send(msg.frame())

    def recv(self, expected):
        msg = read_message(self.transport, self.config.timeout, self.config.max_frame)
        self.frames.append(("in", msg))
        if self.session_id is None:
            self.session_id = msg.session_id
        elif msg.session_id != self.session_id:
            raise StateError("session id changed mid-session")
        if msg.type == MsgType.ERROR and expected != MsgType.ERROR:
            text = msg.payload[:MAX_ERROR_TEXT].decode("utf-8", "replace")
            raise SessionError(f"peer aborted: {text}")
        if msg.type not in ((expected,) if isinstance(expected, MsgType) else expected):
            raise StateError(f"expected {_names(expected)}, got {msg.type.name}")
        return msg

    def abort(self, reason):
        try:
            self.send(MsgType.ERROR, reason.encode("utf-8", "replace")[:MAX_ERROR_TEXT])
        except (OSError, SessionError):
            pass


def _names(expected):
    if isinstance(expected, MsgType):
        return expected.name
    return " or ".join(e.name for e in expected)


def _encode(value, config):
    return encode_value(value, compact=config.compact)


def _parse_bit(payload):
    if payload not in (b"0", b"1"):
        raise StateError("challenge payload must be b'0' or b'1'")
    return payload == b"1"


def _run_prover(ch, keypair, rng):
    cfg = ch.config
    pk = keypair.public
    transcripts = []
    ch.session_id = rng.getrandbits(8 * SESSION_ID_BYTES).to_bytes(SESSION_ID_BYTES, "big")
    hello = hello_payload(pk, cfg)
    ch.send(MsgType.HELLO, hello)
    if ch.recv(MsgType.HELLO).payload != hello:
        raise StateError("verifier did not echo the session parameters")
    if cfg.protocol == 1:
        for _ in range(cfg.rounds):
            B, psi = p1_commit(pk, rng, cfg.height)
            ch.send(MsgType.COMMITMENT, _encode(B, cfg))
            msg = ch.recv((MsgType.CHALLENGE_BIT, MsgType.VERDICT))
            if msg.type == MsgType.VERDICT:
                return msg.payload == b"accept", transcripts
            i = int(_parse_bit(msg.payload))
            delta = p1_respond(psi, keypair.secret_phi, i)
            ch.send(MsgType.RESPONSE_ISO, _encode(delta, cfg))
            transcripts.append(Transcript1(B, i, delta, True))
    else:
        B, psi = p1_commit(pk, rng, cfg.height)
        ch.send(MsgType.COMMITMENT, _encode(B, cfg))
        challenge = decode_value(ch.recv(MsgType.P2_CHALLENGE).payload, "p2_challenge")
        a_prime = p2_respond(keypair, psi, B, challenge)
        ch.send(MsgType.P2_RESPONSE, _encode(a_prime, cfg))
        transcripts.append(Transcript2(B, challenge, a_prime, True))
    verdict = ch.recv(MsgType.VERDICT).payload
    if verdict not in (b"accept", b"reject"):
        raise StateError("malformed verdict")
    return verdict == b"accept", transcripts


def _run_verifier(ch, pk, rng):
    cfg = ch.config
    transcripts = []
    hello = ch.recv(MsgType.HELLO).payload
    if hello != hello_payload(pk, cfg):
        raise StateError("session parameters (protocol, key, rounds or hash) do not match")
    ch.send(MsgType.HELLO, hello)
    accepted = True
    if cfg.protocol == 1:
        for _ in range(cfg.rounds):
            B = decode_value(ch.recv(MsgType.COMMITMENT).payload, "algebra")
            i = rng.getrandbits(1)
            ch.send(MsgType.CHALLENGE_BIT, b"1" if i else b"0")
            delta = decode_value(ch.recv(MsgType.RESPONSE_ISO).payload, "isomorphism")
            ok = p1_verify(pk, B, i, delta)
            transcripts.append(Transcript1(B, i, delta, ok))
            if not ok:
                accepted = False
                break
    else:
        B = decode_value(ch.recv(MsgType.COMMITMENT).payload, "algebra")
        height = pk.height if cfg.height is None else cfg.height
        challenge = p2_challenge(B, height, rng, unimodular=pk.variant == "order")
        ch.send(MsgType.P2_CHALLENGE, _encode(challenge, cfg))
        a_prime = decode_value(ch.recv(MsgType.P2_RESPONSE).payload, "element")
        accepted = p2_verify(pk, challenge.algebra, a_prime)
        transcripts.append(Transcript2(B, challenge, a_prime, accepted))
    ch.send(MsgType.VERDICT, b"accept" if accepted else b"reject")
    return accepted, transcripts


def run_session(role, transport, config, key, rng):
    """Run one session as ``"prover"`` (key: KeyPair) or ``"verifier"`` (key: PublicKey).

    Never raises on peer misbehaviour: framing, ordering, decoding and
    timeout failures end the session with ``accepted=False`` and an error
    description.
    """
    if role not in ("prover", "verifier"):
        raise UsageError(f"role must be 'prover' or 'verifier', not {role!r}")
    ch = _Channel(transport, config)
    try:
        if role == "prover":
            accepted, transcripts = _run_prover(ch, key, rng)
        else:
            accepted, transcripts = _run_verifier(ch, key, rng)
        return SessionResult(accepted, transcripts, ch.frames)
    except (CsaError, OSError, ValueError, TypeError, ArithmeticError) as exc:
        failure = exc
    error = f"{type(failure).__name__}: {failure}"
    if ch.session_id is None:
        ch.session_id = bytes(SESSION_ID_BYTES)
    peer_gone = isinstance(failure, (FramingError, SessionTimeout, OSError))
    if not (peer_gone and role == "prover"):
        ch.abort(error)
    if role == "verifier":
        try:
            ch.send(MsgType.VERDICT, b"reject")
        except (OSError, SessionError):
            pass
    return SessionResult(False, [], ch.frames, error)


def replay_session(pk, frames, config):
    """Re-verify a captured session offline from the verifier's point of view.

    ``frames`` is the ``frames`` list of a SessionResult from either side.
    Returns True iff the captured traffic is a complete accepting run.
    """
    seen = [msg for _, msg in frames]
    try:
        if not seen or seen[0].type != MsgType.HELLO or seen[0].payload != hello_payload(pk, config):
            return False
        body = [m for m in seen if m.type != MsgType.HELLO]
        if config.protocol == 1:
            if len(body) != 3 * config.rounds + 1:
                return False
            for r in range(config.rounds):
                c, b, d = body[3 * r : 3 * r + 3]
                if (c.type, b.type, d.type) != (MsgType.COMMITMENT, MsgType.CHALLENGE_BIT, MsgType.RESPONSE_ISO):
                    return False
                B = decode_value(c.payload, "algebra")
                delta = decode_value(d.payload, "isomorphism")
                if not p1_verify(pk, B, int(_parse_bit(b.payload)), delta):
                    return False
        else:
            if [m.type for m in body] != [MsgType.COMMITMENT, MsgType.P2_CHALLENGE, MsgType.P2_RESPONSE, MsgType.VERDICT]:
                return False
            B = decode_value(body[0].payload, "algebra")
            ch = decode_value(body[1].payload, "p2_challenge")
            if not verify_isomorphism(B, ch.algebra, ch.delta):
                return False
            if not p2_verify(pk, ch.algebra, decode_value(body[2].payload, "element")):
                return False
        return True
    except (CsaError, ValueError):
        return False


def captured_verdict(frames):
    """The verdict carried by captured frames, or None."""
    for _, msg in reversed(frames):
        if msg.type == MsgType.VERDICT:
            return msg.payload == b"accept"
    return None


def outgoing_bytes(frames):
    """Concatenated frames a side sent, ready for a BufferTransport."""
    return b"".join(msg.frame() for direction, msg in frames if direction == "out")
