"""
Signatures from long challenges
===============================

The verifier's re-presentation of the commitment is derived from a hash,
and the answer is the pulled-back public element, checked by its minimal
polynomial.  Note the limitation printed at the end.
"""

import random
from dataclasses import replace

from csazkp import (
    decode_value,
    derive_challenge,
    encode_value,
    keygen,
    multiply,
    random_basis_change,
    sign,
    verify_signature,
)
from csazkp.signature import Signature

rng = random.Random(9)
kp = keygen("matrix", 3, 3, rng)
pk = kp.public
print("public element polynomial:", pk.element_minpoly)

sig = sign(kp, b"hello", rng)
blob = encode_value(sig)
print(len(blob), "bytes; valid:", verify_signature(pk, b"hello", decode_value(blob, "signature")))
print("other message:", verify_signature(pk, b"hellO", sig))

C, _, _ = derive_challenge(pk, b"hello", sig.commitment)
guess = replace(sig, response=multiply(C, C.basis(0), C.basis(1)))
print("arbitrary response:", verify_signature(pk, b"hello", guess))

# limitation: anyone can commit to a re-presentation of A1 itself and
# transport the public element along the map they chose
B, chi = random_basis_change(pk.A1, 3, rng)
C, delta, seed = derive_challenge(pk, b"forged", B)
forged = Signature(B, delta(chi(pk.element)), seed)
print("forgery without the secret verifies:", verify_signature(pk, b"forged", forged))
