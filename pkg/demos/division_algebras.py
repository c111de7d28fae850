"""
Cyclic and division algebras
============================

Hamilton's quaternions, a split quaternion algebra, and a degree-3 cyclic
algebra built on the cubic subfield of Q(zeta_7).
"""

import random

from csazkp import (
    cyclic_algebra,
    cyclic_element,
    cyclic_field,
    find_zero_divisor,
    invert_element,
    keygen,
    minimal_polynomial,
    multiply,
    quadratic_field,
    random_element,
)
from csazkp.construction import sample_cyclic_parameter

rng = random.Random(3)

# (Q(i)|Q, conjugation, -1): every nonzero element is invertible
L = quadratic_field(-1)
H = cyclic_algebra(L, -1)
x = random_element(H, 4, rng)
print("x =", [str(c) for c in x.coords.entries], "inverse =", [str(c) for c in invert_element(H, x).coords.entries])
print("zero divisor search in H:", find_zero_divisor(H, rng))

# with a = 1 the algebra splits: u^2 = 1 gives (1 + u)(1 - u) = 0
S = cyclic_algebra(L, 1)
u = cyclic_element(L, [1, 0], 1)
print("(1+u)(1-u) is zero:", multiply(S, S.identity + u, S.identity - u).is_zero())

# degree 3: Gaussian periods for q = 7 and the cyclic shift of periods
F = cyclic_field(3)
print("q =", F.q, "- period minimal polynomial", F.period_minpoly)
a = sample_cyclic_parameter(3, rng)
D = cyclic_algebra(F, a)
for _ in range(3):
    y = random_element(D, 2, rng)
    f = minimal_polynomial(D, y)
    print(f"degree {f.degree}, rational roots {f.rational_roots()}: {f}")

# a division-variant key hides D in two random presentations
kp = keygen("division", 3, 3, rng)
print("division key of dimension", kp.A0.dim, "- public element polynomial", kp.public.element_minpoly)
