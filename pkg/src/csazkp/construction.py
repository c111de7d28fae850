"""Key generation and the number-theoretic algebras behind it.

Cyclic fields come from Gaussian periods, cyclic algebras are built from a
cyclic field and a rational ``a``, and division algebras of squarefree
degree are tensor products of prime-degree cyclic algebras.
"""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Optional

import numpy as np

from .algebra import (
    MAX_TRIES,
    AlgElement,
    Algebra,
    Isomorphism,
    Polynomial,
    _transport,
    center_basis,
    integral_scaling,
    minimal_polynomial,
    random_basis_change,
    random_element,
    random_unimodular_matrix,
    tensor_product,
)
from .errors import RandomnessError, StructureError, UsageError
from .linalg import RatArray, as_rational, invert_matrix

VARIANTS = ("matrix", "division", "order")
MAX_CYCLIC_DEGREE = 7
NORM_SAMPLE_RANGE = (2, 2**32)
DEFAULT_HEIGHT = 3
DEFAULT_ORDER_BOUND = 16


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n):
    fs = _prime_factors(n)
    return len(fs) == len(set(fs))


def _primitive_root(q):
    phi = q - 1
    factors = set(_prime_factors(phi))
    for g in range(2, q):
        if all(pow(g, phi // f, q) != 1 for f in factors):
            return g
    raise AssertionError(f"no primitive root mod {q}")


@dataclass(frozen=True)
class CyclicFieldData:
    """A degree-p cyclic number field with an explicit Galois generator.

    ``mult_table`` holds the structure constants of the field in its basis,
    ``sigma`` the matrix of the generator (column i is the image of basis
    vector i) and ``one`` the coordinates of 1.  ``q`` is the conductor for
    Gaussian-period fields and None for fields given directly.
    """

    p: int
    q: Optional[int]
    mult_table: RatArray
    sigma: RatArray
    one: RatArray
    period_minpoly: Polynomial

    @cached_property
    def algebra(self):
        return Algebra(self.mult_table)

    def apply_sigma(self, x, times=1):
        S = self.sigma if times >= 0 else invert_matrix(self.sigma)
        v = x.coords
        for _ in range(abs(times)):
            v = S @ v
        return AlgElement(v)


def cyclic_field(p):
    """Degree-p subfield of Q(zeta_q) spanned by Gaussian periods.

    q is the smallest prime with q = 1 (mod 2p), so the periods are real.
    Basis vector i is the period eta_i = sum of zeta^h over the coset
    g^i H of the index-p subgroup H of (Z/q)^*; the generator sends
    eta_i to eta_{i+1}.
    """
    if not is_prime(p):
        raise UsageError(f"cyclic field degree must be prime, got {p}")
    if p > MAX_CYCLIC_DEGREE:
        raise UsageError(f"cyclic field degree {p} exceeds the supported maximum {MAX_CYCLIC_DEGREE}")
    q = 2 * p + 1
    while not is_prime(q):
        q += 2 * p
    g = _primitive_root(q)
    f = (q - 1) // p
    cosets = [[pow(g, i + p * t, q) for t in range(f)] for i in range(p)]
    table = np.zeros((p, p, p), dtype=object)
    for i in range(p):
        for j in range(p):
            counts = [0] * q
            for a in cosets[i]:
                for b in cosets[j]:
                    counts[(a + b) % q] += 1
            for t in range(p):
                values = {counts[h] for h in cosets[t]}
                assert len(values) == 1, "period products must be constant on cosets"
                # zeta^0 = 1 = -(eta_0 + ... + eta_{p-1})
                table[i, j, t] = values.pop() - counts[0]
    sigma = np.zeros((p, p), dtype=object)
    for i in range(p):
        sigma[(i + 1) % p, i] = 1
    mult = RatArray(table)
    one = RatArray([-1] * p)
    fld = Algebra(mult)
    eta0 = AlgElement(RatArray([1] + [0] * (p - 1)))
    return CyclicFieldData(p, q, mult, RatArray(sigma), one, minimal_polynomial(fld, eta0))


def quadratic_field(d):
    """Q(sqrt d) in the basis (1, sqrt d), with sqrt d -> -sqrt d."""
    d = int(d)
    if d == 0 or d == 1 or (d > 0 and isqrt(d) ** 2 == d):
        raise UsageError(f"{d} is a rational square; Q(sqrt {d}) is not a field extension")
    table = np.zeros((2, 2, 2), dtype=object)
    table[0, 0, 0] = 1
    table[0, 1, 1] = 1
    table[1, 0, 1] = 1
    table[1, 1, 0] = d
    sigma = RatArray([[1, 0], [0, -1]])
    return CyclicFieldData(2, None, RatArray(table), sigma, RatArray([1, 0]), Polynomial((-d, 0, 1)))


def _cyclic_index(p, r, i):
    return i * p + r


def cyclic_algebra(fld, a):
    """The cyclic algebra (L|Q, sigma, a) with u^p = a and u^-1 l u = sigma(l).

    Basis vector ``i * p + r`` is l_r u^i, where l_r runs over the field's
    basis.  Products follow from u^i l = sigma^-i(l) u^i.
    """
    a = as_rational(a)
    if a == 0:
        raise UsageError("cyclic algebra parameter a must be nonzero")
    p = fld.p
    M = fld.mult_table
    S_inv = invert_matrix(fld.sigma)
    shifts = [RatArray.identity(p)]
    for _ in range(p - 1):
        shifts.append(S_inv @ shifts[-1])
    gamma = [[[Fraction(0)] * (p * p) for _ in range(p * p)] for _ in range(p * p)]
    table = M.tolist()
    for i in range(p):
        twisted = shifts[i].tolist()  # column s is sigma^-i(l_s)
        for j in range(p):
            scale = a if i + j >= p else Fraction(1)
            block = (i + j) % p
            for r in range(p):
                for s in range(p):
                    w = [twisted[t][s] for t in range(p)]
                    for t_out in range(p):
                        c = sum(w[t] * table[r][t][t_out] for t in range(p) if w[t])
                        if c:
                            gamma[_cyclic_index(p, r, i)][_cyclic_index(p, s, j)][
                                _cyclic_index(p, t_out, block)
                            ] = c * scale
    A = Algebra(RatArray.of(gamma))
    if len(center_basis(A)) != 1:
        raise StructureError("cyclic algebra is not central")
    return A


def cyclic_element(fld, l, i):
    """The element l * u^i of cyclic_algebra(fld, .), for field coordinates l."""
    p = fld.p
    l = RatArray.of(l)
    coords = [Fraction(0)] * (p * p)
    for r in range(p):
        coords[_cyclic_index(p, r, i)] = l[r]
    return AlgElement(RatArray.of(coords))


def _is_perfect_power(n, p):
    lo, hi = 0, 1 << (n.bit_length() // p + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**p < n:
            lo = mid + 1
        else:
            hi = mid
    return lo**p == n


def sample_cyclic_parameter(p, rng, max_tries=MAX_TRIES):
    """Uniform integer a in [2, 2^32] that is not a perfect p-th power."""
    lo, hi = NORM_SAMPLE_RANGE
    for _ in range(max_tries):
        a = rng.randint(lo, hi)
        if not _is_perfect_power(a, p):
            return a
    raise RandomnessError("could not sample a non-p-th-power parameter")


def build_division_algebra(k, rng):
    """Tensor product over primes p | k of cyclic algebras (L_p, sigma, a_p).

    Each a_p is a random integer, so the factor is a division algebra with
    high probability; this is not certified.
    """
    if k < 1 or not is_squarefree(k):
        raise UsageError(f"division algebra degree must be squarefree, got {k}")
    primes = _prime_factors(k)
    if any(p > MAX_CYCLIC_DEGREE for p in primes):
        raise UsageError(f"prime factors of {k} exceed {MAX_CYCLIC_DEGREE}")
    D = Algebra(RatArray([[[1]]]))
    for p in primes:
        factor = cyclic_algebra(cyclic_field(p), sample_cyclic_parameter(p, rng))
        D = factor if D.dim == 1 else tensor_product(D, factor)
    if D.dim > 1 and len(center_basis(D)) != 1:
        raise StructureError("tensor product is not central")
    return D


# -- matrix presentations ---------------------------------------------------

def algebra_from_matrices(mats):
    """Structure constants of the span of k^2 linearly independent k x k matrices.

    Returns None if the matrices are dependent.
    """
    mats = [np.array(M, dtype=object) for M in mats]
    m = len(mats)
    k = mats[0].shape[0]
    if m != k * k:
        raise UsageError(f"need {k * k} matrices of size {k}x{k}, got {m}")
    basis = RatArray(np.stack([M.ravel() for M in mats], axis=1))
    inv = invert_matrix(basis)
    if inv is None:
        return None
    products = np.stack([np.dot(mats[i], mats[j]).ravel() for i in range(m) for j in range(m)], axis=1)
    coords = inv @ RatArray(products)  # column (i, j) = coordinates of b_i b_j
    return Algebra(coords.T.reshape(m, m, m))


def _random_int_matrix(k, height, rng):
    return np.array([[rng.randint(-height, height) for _ in range(k)] for _ in range(k)], dtype=object)


def _det_nonzero(M):
    return invert_matrix(RatArray(M)) is not None


def random_matrix_presentation(k, height, rng, *, require_invertible=True, sampler=None, max_tries=MAX_TRIES):
    """Random structure-constant presentation of M_k(Q).

    Draws k^2 random integer matrices (entries in [-height, height]) until
    they are linearly independent and, with ``require_invertible``, none is a
    zero divisor.  ``sampler(rng)`` may replace the draw; tests use it to
    force specific bases.  Returns (algebra, model basis).  The model basis
    is an explicit isomorphism to M_k(Q) and must never be published.
    """
    if k < 2:
        raise UsageError("matrix presentations need k >= 2")
    if height < 1:
        raise UsageError("height bound must be at least 1")
    for _ in range(max_tries):
        if sampler is not None:
            mats = [np.array(M, dtype=object) for M in sampler(rng)]
        else:
            mats = [_random_int_matrix(k, height, rng) for _ in range(k * k)]
        if require_invertible and not all(_det_nonzero(M) for M in mats):
            continue
        A = algebra_from_matrices(mats)
        if A is not None:
            return A, mats
    raise RandomnessError(f"no usable basis of M_{k}(Q) in {max_tries} draws")


# -- keys -------------------------------------------------------------------

@dataclass(frozen=True)
class PublicKey:
    variant: str
    k: int
    height: int
    A0: Algebra
    A1: Algebra
    element: Optional[AlgElement] = None
    order_scale: Optional[int] = None
    order_bound: Optional[int] = None

    def algebra(self, i):
        return self.A1 if i else self.A0

    @cached_property
    def element_minpoly(self):
        if self.element is None:
            raise UsageError("public key carries no public element")
        return minimal_polynomial(self.A1, self.element)

    @cached_property
    def encoded(self):
        """Canonical bytes, computed once; keys are immutable."""
        from .encoding import encode_value

        return encode_value(self)

    @cached_property
    def digest(self):
        return hashlib.sha256(self.encoded).digest()


@dataclass(frozen=True)
class KeyPair:
    variant: str
    k: int
    height: int
    A0: Algebra
    A1: Algebra
    secret_phi: Isomorphism
    public_element: Optional[AlgElement] = None
    order_scale: Optional[int] = None
    order_bound: Optional[int] = None
    public: PublicKey = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pk = PublicKey(
            self.variant, self.k, self.height, self.A0, self.A1,
            self.public_element, self.order_scale, self.order_bound,
        )
        object.__setattr__(self, "public", pk)


def keypair_from_parts(pk, phi):
    """Reassemble a key pair from its public part and secret isomorphism."""
    return KeyPair(pk.variant, pk.k, pk.height, pk.A0, pk.A1, phi, pk.element, pk.order_scale, pk.order_bound)


def sample_public_element(A, k, height, rng, max_tries=MAX_TRIES):
    """Random element whose minimal polynomial has full degree k.

    Low-degree elements (scalars in particular) make the long-challenge
    protocol trivially forgeable.
    """
    for _ in range(max_tries):
        a = random_element(A, height, rng)
        if minimal_polynomial(A, a).degree == k:
            return a
    raise RandomnessError(f"no element of degree {k} in {max_tries} draws")


def _check_variant(variant, k):
    if variant not in VARIANTS:
        raise UsageError(f"unknown key variant {variant!r}; expected one of {VARIANTS}")
    if k < 2:
        raise UsageError("security parameter k must be at least 2")
    if variant == "division":
        if not is_squarefree(k):
            raise UsageError("division variant needs a squarefree k")
        if any(p > MAX_CYCLIC_DEGREE for p in _prime_factors(k)):
            raise UsageError(f"division variant supports prime factors up to {MAX_CYCLIC_DEGREE}")


def keygen(variant, k, height, rng, *, with_element=True, order_bound=DEFAULT_ORDER_BOUND):
    """Generate a key pair: two presentations A0, A1 of one algebra and the secret map A0 -> A1."""
    _check_variant(variant, k)
    if height < 1:
        raise UsageError("height bound must be at least 1")
    scale = bound = None
    if variant == "matrix":
        A0, _ = random_matrix_presentation(k, height, rng)
        A1, phi = random_basis_change(A0, height, rng)
    elif variant == "division":
        D = build_division_algebra(k, rng)
        A0, _ = random_basis_change(D, height, rng)
        A1, phi = random_basis_change(A0, height, rng)
    else:
        if order_bound < 1:
            raise UsageError("order bound must be positive")
        base, _ = random_matrix_presentation(k, height, rng)
        A0, scale = integral_scaling(base)
        for _ in range(MAX_TRIES):
            T, T_inv = random_unimodular_matrix(A0.dim, rng)
            if max(abs(int(v)) for v in T_inv.num.ravel()) <= order_bound:
                break
        else:
            raise RandomnessError(f"no unimodular basis change within bound {order_bound}")
        A1, phi = _transport(A0, T, T_inv)
        A1, _ = integral_scaling(A1)
        bound = order_bound
    # the element lives in A1: the prover pulls it back along phi^-1
    element = sample_public_element(A1, k, height, rng) if with_element else None
    return KeyPair(variant, k, height, A0, A1, phi, element, scale, bound)
