"""
Orders and bounded isomorphisms
===============================

Scaling a basis clears the denominators of the structure constants.  The
order variant then moves between integral presentations with unimodular
maps, so every isomorphism in play has integer entries.
"""

import random

from csazkp import integral_scaling, keygen, p1_commit, p1_respond, p1_verify, random_matrix_presentation

rng = random.Random(5)

A, _ = random_matrix_presentation(2, 3, rng)
print("denominators before scaling:", sorted({f.denominator for f in A.gamma.entries}))
S, N = integral_scaling(A)
print("scale N =", N, "- integral now:", S.gamma.is_integral())

kp = keygen("order", 2, 3, rng, order_bound=20)
phi = kp.secret_phi.matrix
print("phi integral:", phi.is_integral(), "- largest entry", max(abs(int(v)) for v in phi.num.ravel()))

# commitments are unimodular too, so responses stay integral
B, psi = p1_commit(kp.public, rng)
delta = p1_respond(psi, kp.secret_phi, 1)
print("response integral:", delta.matrix.is_integral(), "- accepted:", p1_verify(kp.public, B, 1, delta))
