"""
Identification by algebra isomorphism
=====================================

Two presentations of M_2(Q) are public; the isomorphism between them is
secret.  The prover convinces the verifier it knows that map, one bit per
round, and a prover without it is caught half the time per round.
"""

import random

from csazkp import (
    BitGuessingCheater,
    extract_witness,
    keygen,
    minimal_polynomial,
    p1_commit,
    p1_respond,
    p1_verify,
    run_identification,
    simulate_transcript,
    verify_isomorphism,
)
from csazkp.protocol import Transcript1

rng = random.Random(1)

# a key: structure constants of A0 and A1, plus phi: A0 -> A1
kp = keygen("matrix", 2, 3, rng)
pk = kp.public
print("dimension", pk.A0.dim, "- gamma has", pk.A0.gamma.num.size, "entries")
print("phi is an isomorphism:", verify_isomorphism(pk.A0, pk.A1, kp.secret_phi))

# twenty honest rounds
ok, transcripts = run_identification(kp, 20, rng)
print("honest prover accepted:", ok, "- challenges", "".join(str(t.challenge) for t in transcripts))

# a cheater guesses the bit ahead of time
wins = sum(run_identification(pk, 1, rng, prover=BitGuessingCheater(pk, rng))[0] for _ in range(2000))
print(f"cheater, one round: {wins / 2000:.3f} accepted")
wins = sum(run_identification(pk, 5, rng, prover=BitGuessingCheater(pk, rng))[0] for _ in range(2000))
print(f"cheater, five rounds: {wins / 2000:.4f} accepted (2^-5 = {2**-5:.4f})")

# answering both bits on one commitment gives the secret away
B, psi = p1_commit(pk, rng)
t0 = Transcript1(B, 0, p1_respond(psi, kp.secret_phi, 0), True)
t1 = Transcript1(B, 1, p1_respond(psi, kp.secret_phi, 1), True)
print("extracted map equals phi:", extract_witness(t0, t1, pk).matrix == kp.secret_phi.matrix)

# but a single transcript can be faked without phi
t, attempts = simulate_transcript(pk, lambda B: rng.getrandbits(1), rng)
print("simulated transcript verifies:", p1_verify(pk, t.commitment, t.challenge, t.response), "after", attempts, "attempt(s)")

# minimal polynomials are invisible to the change of presentation
x = pk.A0.basis(1) + pk.A0.basis(2)
print(minimal_polynomial(pk.A0, x), "==", minimal_polynomial(pk.A1, kp.secret_phi(x)))
