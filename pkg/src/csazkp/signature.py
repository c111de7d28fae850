"""Signatures from the long-challenge protocol via Fiat-Shamir.

The verifier's move (a fresh presentation C of the commitment B together
with delta: B -> C) is replayed from a SHA-256 digest of the public key,
the commitment and the message.  Verification recomputes that challenge
and checks the minimal polynomial of the response.

No zero-knowledge claim is made for these signatures.
"""

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from .algebra import AlgElement, Algebra
from .errors import CsaError, DerivationError, RandomnessError
from .protocol import P2Challenge, p1_commit, p2_challenge, p2_respond, p2_verify

HASH_NAME = "sha256"
DOMAIN = b"csazkp/fiat-shamir/v1"


@dataclass(frozen=True)
class Signature:
    commitment: Algebra
    response: AlgElement
    seed: bytes
    hash_name: str = HASH_NAME


class HashRandom:
    """Deterministic generator: SHA-256 in counter mode over a seed.

    Implements the handful of ``random.Random`` methods the samplers use,
    with its own reduction rules so the stream does not depend on the
    Python version.
    """

    def __init__(self, seed):
        self._seed = bytes(seed)
        self._counter = 0
        self._pool = 0
        self._bits = 0

    def _refill(self):
        block = hashlib.sha256(self._seed + self._counter.to_bytes(8, "big")).digest()
        self._counter += 1
        self._pool = (self._pool << 256) | int.from_bytes(block, "big")
        self._bits += 256

    def getrandbits(self, k):
        if k < 0:
            raise ValueError("number of bits must be non-negative")
        while self._bits < k:
            self._refill()
        self._bits -= k
        out = self._pool >> self._bits
        self._pool &= (1 << self._bits) - 1
        return out

    def _below(self, n):
        if n <= 0:
            raise ValueError("empty range")
        k = n.bit_length()
        while True:
            r = self.getrandbits(k)
            if r < n:
                return r

    def randrange(self, start, stop=None):
        if stop is None:
            start, stop = 0, start
        return start + self._below(stop - start)

    def randint(self, a, b):
        return a + self._below(b - a + 1)

    def random(self):
        return self.getrandbits(53) / (1 << 53)

    def choice(self, seq):
        return seq[self._below(len(seq))]

    def shuffle(self, x):
        for i in range(len(x) - 1, 0, -1):
            j = self._below(i + 1)
            x[i], x[j] = x[j], x[i]

    def sample(self, population, k):
        pool = list(population)
        if not 0 <= k <= len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self._below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def _framed(*parts):
    return b"".join(len(p).to_bytes(8, "big") + p for p in parts)


def challenge_seed(pk, message, B):
    """SHA-256 over the length-framed canonical encodings of pk, B and the message."""
    from .encoding import encode_value

    return hashlib.sha256(DOMAIN + _framed(pk.encoded, encode_value(B), bytes(message))).digest()


@lru_cache(maxsize=1024)
def _challenge_from_seed(seed, B, height, unimodular):
    return p2_challenge(B, height, HashRandom(seed), unimodular=unimodular)


def derive_challenge(pk, message, B):
    """Deterministic verifier move: returns (C, delta, seed)."""
    seed = challenge_seed(pk, message, B)
    try:
        ch = _challenge_from_seed(seed, B, pk.height, pk.variant == "order")
    except RandomnessError as exc:
        raise DerivationError(f"challenge derivation failed for seed {seed.hex()[:16]}: {exc}") from None
    return ch.algebra, ch.delta, seed


def sign(keypair, message, rng, height=None):
    """Commit, derive the challenge from the message, respond."""
    pk = keypair.public
    B, psi = p1_commit(pk, rng, height)
    C, delta, seed = derive_challenge(pk, message, B)
    a_prime = p2_respond(keypair, psi, B, P2Challenge(C, delta))
    return Signature(B, a_prime, seed, HASH_NAME)


def verify_signature(pk, message, sig):
    """Accept or reject; never raises."""
    try:
        if not isinstance(sig, Signature) or sig.hash_name != HASH_NAME:
            return False
        B = sig.commitment
        if not isinstance(B, Algebra) or B.dim != pk.A0.dim:
            return False
        C, _, seed = derive_challenge(pk, message, B)
        if seed != sig.seed:
            return False
        return p2_verify(pk, C, sig.response)
    except (CsaError, ValueError, TypeError, ArithmeticError):
        return False
