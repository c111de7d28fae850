"""Interactive identification protocols over algebra isomorphisms.

Protocol 1 (one-bit challenges): the prover publishes a fresh presentation
B of A0 and, on challenge i, reveals an isomorphism A_i -> B.
Protocol 2 (long challenges): the verifier re-presents B as C, and the
prover must answer with an element of C sharing the public element's
minimal polynomial.
"""

from dataclasses import dataclass
from typing import Optional

from .algebra import (
    AlgElement,
    Algebra,
    Isomorphism,
    compose_iso,
    invert_iso,
    minimal_polynomial,
    random_basis_change,
    verify_isomorphism,
)
from .errors import ChallengeRejected, CsaError, SimulationError, UsageError
from .linalg import determinant

SIMULATOR_MAX_ROUNDS = 128


@dataclass(frozen=True)
class Transcript1:
    commitment: Algebra
    challenge: int
    response: Isomorphism
    accepted: bool


@dataclass(frozen=True)
class P2Challenge:
    algebra: Algebra
    delta: Isomorphism


@dataclass(frozen=True)
class Transcript2:
    commitment: Algebra
    challenge: P2Challenge
    response: Optional[AlgElement]
    accepted: bool


def _unimodular(pk):
    return pk.variant == "order"


def _height(pk, height):
    return pk.height if height is None else height


def _is_integral_unimodular(f):
    return f.matrix.is_integral() and abs(determinant(f.matrix)) == 1


# -- Protocol 1 ---------------------------------------------------------------

def p1_commit(pk, rng, height=None):
    """Fresh commitment: (B, psi) with psi: A0 -> B.

    Order keys use unimodular integer basis changes so every map in play is
    also an isomorphism of the integral orders.
    """
    return random_basis_change(pk.A0, _height(pk, height), rng, unimodular=_unimodular(pk))


def p1_respond(psi, phi, i):
    """psi for i = 0; psi after phi^-1 (a map A1 -> B) for i = 1."""
    if i not in (0, 1):
        raise UsageError(f"challenge must be a bit, got {i!r}")
    if i == 0:
        return psi
    return compose_iso(psi, invert_iso(phi))


def p1_verify(pk, B, i, delta):
    """Accept iff B is a valid algebra and delta is an isomorphism A_i -> B.

    Never raises: malformed input is a rejection.
    """
    try:
        if isinstance(i, bool) or i not in (0, 1):
            return False
        if not isinstance(B, Algebra):
            B = Algebra(B)
        if not isinstance(delta, Isomorphism):
            delta = Isomorphism.of(delta)
        if _unimodular(pk) and not _is_integral_unimodular(delta):
            return False
        return verify_isomorphism(pk.algebra(i), B, delta)
    except (CsaError, ValueError, TypeError, ArithmeticError):
        return False


class HonestProver:
    """Protocol 1 prover holding the secret isomorphism."""

    def __init__(self, keypair, rng, height=None):
        self.keypair = keypair
        self.rng = rng
        self.height = height
        self._psi = None

    def commit(self):
        B, self._psi = p1_commit(self.keypair.public, self.rng, self.height)
        return B

    def respond(self, i):
        if self._psi is None:
            raise UsageError("respond() called before commit()")
        psi, self._psi = self._psi, None
        return p1_respond(psi, self.keypair.secret_phi, i)


class BitGuessingCheater:
    """Prover without the secret: guesses the challenge bit g in advance,
    commits to a re-presentation of A_g and can only answer challenge g."""

    def __init__(self, pk, rng, height=None):
        self.pk = pk
        self.rng = rng
        self.height = height
        self.guess = None
        self._psi = None

    def commit(self):
        self.guess = self.rng.getrandbits(1)
        B, self._psi = random_basis_change(
            self.pk.algebra(self.guess), _height(self.pk, self.height), self.rng, unimodular=_unimodular(self.pk)
        )
        return B

    def respond(self, i):
        return self._psi


def run_identification(key, rounds, rng, prover=None, height=None):
    """Run ``rounds`` sequential rounds of Protocol 1 with uniform challenges.

    ``key`` is a KeyPair (honest prover by default) or a PublicKey with an
    explicit ``prover``.  Stops at the first rejected round.
    Returns (accepted, transcripts).
    """
    if rounds < 1:
        raise UsageError("need at least one round")
    pk = getattr(key, "public", key)
    if prover is None:
        prover = HonestProver(key, rng, height)
    transcripts = []
    for _ in range(rounds):
        B = prover.commit()
        i = rng.getrandbits(1)
        delta = prover.respond(i)
        ok = p1_verify(pk, B, i, delta)
        transcripts.append(Transcript1(B, i, delta, ok))
        if not ok:
            return False, transcripts
    return True, transcripts


def extract_witness(t0, t1, pk=None):
    """Isomorphism A0 -> A1 from two accepting answers to one commitment.

    With delta_0: A0 -> B and delta_1: A1 -> B, returns delta_1^-1 after delta_0.
    """
    if t0.challenge == 1 and t1.challenge == 0:
        t0, t1 = t1, t0
    if (t0.challenge, t1.challenge) != (0, 1):
        raise UsageError("extraction needs challenges 0 and 1")
    if t0.commitment != t1.commitment:
        raise UsageError("extraction needs both transcripts on the same commitment")
    if not (t0.accepted and t1.accepted):
        raise UsageError("extraction needs accepting transcripts")
    if pk is not None and not (
        p1_verify(pk, t0.commitment, 0, t0.response) and p1_verify(pk, t1.commitment, 1, t1.response)
    ):
        raise UsageError("transcripts do not verify against the public key")
    return compose_iso(invert_iso(t1.response), t0.response)


def simulate_transcript(pk, verifier_strategy, rng, height=None, max_rounds=SIMULATOR_MAX_ROUNDS):
    """Produce an accepting Protocol 1 transcript without the secret key.

    Guess i, re-present A_i as B, ask the strategy for its bit, and keep the
    attempt only if the bit equals i.  Returns (transcript, attempts used).
    """
    for attempt in range(1, max_rounds + 1):
        i = rng.getrandbits(1)
        B, psi = random_basis_change(pk.algebra(i), _height(pk, height), rng, unimodular=_unimodular(pk))
        if verifier_strategy(B) == i:
            return Transcript1(B, i, psi, True), attempt
    raise SimulationError(f"simulator exhausted {max_rounds} restarts")


# -- Protocol 2 ---------------------------------------------------------------

def p2_challenge(B, height, rng, unimodular=False):
    """Verifier move: a fresh presentation C of B and the map delta: B -> C."""
    C, delta = random_basis_change(B, height, rng, unimodular=unimodular)
    if not verify_isomorphism(B, C, delta):
        raise AssertionError("freshly built challenge map failed verification")
    return P2Challenge(C, delta)


def p2_respond(keypair, psi, B, challenge):
    """a' = delta(psi(phi^-1(a))); refuses a delta that is not an isomorphism B -> C."""
    if keypair.public_element is None:
        raise UsageError("key pair has no public element")
    try:
        valid = verify_isomorphism(B, challenge.algebra, challenge.delta)
    except (CsaError, ValueError, TypeError):
        valid = False
    if not valid:
        raise ChallengeRejected("challenge map is not an isomorphism of the commitment")
    pulled_back = invert_iso(keypair.secret_phi)(keypair.public_element)
    return challenge.delta(psi(pulled_back))


def p2_verify(pk, C, a_prime):
    """Accept iff a' in C has the same minimal polynomial as the public element."""
    try:
        if not isinstance(a_prime, AlgElement) or a_prime.dim != C.dim:
            return False
        return minimal_polynomial(C, a_prime) == pk.element_minpoly
    except (CsaError, ValueError, TypeError, ArithmeticError):
        return False


def run_protocol2(keypair, rng, height=None):
    """One honest run of Protocol 2; returns the transcript."""
    pk = keypair.public
    h = _height(pk, height)
    B, psi = p1_commit(pk, rng, h)
    challenge = p2_challenge(B, h, rng, unimodular=_unimodular(pk))
    a_prime = p2_respond(keypair, psi, B, challenge)
    return Transcript2(B, challenge, a_prime, p2_verify(pk, challenge.algebra, a_prime))
