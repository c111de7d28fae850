"""Finite-dimensional associative algebras over Q given by structure constants.

An algebra of dimension m is a tensor ``gamma`` with
``b_i * b_j = sum_k gamma[i, j, k] * b_k``.  Elements are coordinate
vectors in that basis, isomorphisms are m x m matrices sending source
coordinates to target coordinates.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

import numpy as np

from .errors import RandomnessError, StructureError, UsageError
from .linalg import RatArray, as_rational, determinant, invert_matrix, kernel_basis, solve_linear

MAX_TRIES = 64


@dataclass(frozen=True)
class AlgElement:
    """Coordinates of an element relative to some algebra's basis."""

    coords: RatArray

    @classmethod
    def of(cls, coords):
        coords = RatArray.of(coords)
        if coords.ndim != 1:
            raise UsageError(f"element coordinates must be a vector, got shape {coords.shape}")
        return cls(coords)

    @property
    def dim(self):
        return self.coords.shape[0]

    def is_zero(self):
        return self.coords.is_zero()

    def __add__(self, other):
        return AlgElement(self.coords + other.coords)

    def __sub__(self, other):
        return AlgElement(self.coords - other.coords)

    def __neg__(self):
        return AlgElement(-self.coords)

    def __mul__(self, scalar):
        return AlgElement(self.coords * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return "AlgElement(" + ", ".join(str(c) for c in self.coords.entries) + ")"


@dataclass(frozen=True)
class Isomorphism:
    """Linear map between algebras of equal dimension, as a coordinate matrix.

    Being an isomorphism is a claim relative to a (source, target) pair and
    is only ever established by :func:`verify_isomorphism`.
    """

    matrix: RatArray

    @classmethod
    def of(cls, matrix):
        matrix = RatArray.of(matrix)
        if matrix.ndim != 2 or matrix.rows != matrix.cols:
            raise UsageError(f"isomorphism matrix must be square, got shape {matrix.shape}")
        return cls(matrix)

    @classmethod
    def identity(cls, m):
        return cls(RatArray.identity(m))

    @property
    def source_dim(self):
        return self.matrix.cols

    @property
    def target_dim(self):
        return self.matrix.rows

    def __call__(self, x):
        if x.dim != self.source_dim:
            raise UsageError(f"element of dimension {x.dim} fed to map of source dimension {self.source_dim}")
        return AlgElement(self.matrix @ x.coords)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over Q, coefficients lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = [as_rational(c) for c in self.coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self):
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def is_monic(self):
        return self.coeffs[-1] == 1

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def rational_roots(self, search_limit=10**12):
        """Distinct rational roots, by the rational root theorem.

        Gives up (returns what it has) if a coefficient to be factored
        exceeds ``search_limit`` in absolute value.
        """
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        roots = set()
        while ints and ints[0] == 0 and len(ints) > 1:
            roots.add(Fraction(0))
            ints = ints[1:]
        if len(ints) <= 1:
            return sorted(roots)
        a0, an = abs(ints[0]), abs(ints[-1])
        if max(a0, an) > search_limit:
            return sorted(roots)
        for p in _divisors(a0):
            for q in _divisors(an):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if Polynomial(tuple(ints))(cand) == 0:
                        roots.add(cand)
        return sorted(roots)

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0 and len(self.coeffs) > 1:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _divisors(n):
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


class Algebra:
    """Unital associative algebra over Q given by structure constants.

    Construction validates associativity exactly and solves for the
    identity; an invalid tensor raises :class:`StructureError`.
    """

    __slots__ = ("gamma", "identity", "__weakref__")

    def __init__(self, gamma):
        gamma = RatArray.of(gamma)
        if gamma.ndim != 3 or not gamma.shape[0] == gamma.shape[1] == gamma.shape[2] or gamma.shape[0] == 0:
            raise UsageError(f"structure constants must have shape (m, m, m), got {gamma.shape}")
        _check_associative(gamma)
        self.gamma = gamma
        self.identity = AlgElement(_solve_identity(gamma))

    @property
    def dim(self):
        return self.gamma.shape[0]

    def basis(self, i):
        v = np.zeros(self.dim, dtype=object)
        v[i] = 1
        return AlgElement(RatArray(v))

    def element(self, coords):
        x = AlgElement.of(coords)
        _check_dim(self, x)
        return x

    def scalar(self, c):
        return AlgElement(self.identity.coords * c)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.gamma == other.gamma

    def __hash__(self):
        return hash(self.gamma)

    @classmethod
    def _trusted(cls, gamma, identity):
        """Skip validation; only for tensors derived from a valid algebra."""
        A = cls.__new__(cls)
        A.gamma = gamma
        A.identity = identity
        return A

    def __repr__(self):
        return f"Algebra(dim={self.dim})"


def new_algebra(gamma):
    """Validate a structure-constant tensor and return the algebra it defines."""
    return Algebra(gamma)


def _check_associative(gamma):
    m = gamma.shape[0]
    g = gamma.num
    left = np.dot(g.reshape(m * m, m), g.reshape(m, m * m)).reshape(m, m, m, m)
    right = np.tensordot(g, g, axes=([1], [2])).transpose(0, 2, 3, 1)
    bad = np.argwhere(left != right)
    if bad.size:
        i, j, k, l = (int(v) for v in bad[0])
        raise StructureError(
            f"not associative: (b{i} b{j}) b{k} != b{i} (b{j} b{k}) in coordinate {l}",
            indices=(i, j, k, l),
        )


def _solve_identity(gamma):
    m = gamma.shape[0]
    g = gamma.num
    system = np.concatenate(
        (g.transpose(1, 2, 0).reshape(m * m, m), g.transpose(0, 2, 1).reshape(m * m, m))
    )
    eye = np.eye(m, dtype=int).astype(object).ravel()
    rhs = np.concatenate((eye, eye)) * gamma.den
    e = solve_linear(RatArray(system), RatArray(rhs))
    if e is None:
        raise StructureError("algebra has no two-sided identity")
    if kernel_basis(RatArray(system)):
        raise StructureError("identity element is not unique")
    return e


def _check_dim(A, *elems):
    for x in elems:
        if x.dim != A.dim:
            raise UsageError(f"element of dimension {x.dim} used in algebra of dimension {A.dim}")


def multiply(A, x, y):
    """Product x * y in A."""
    _check_dim(A, x, y)
    m = A.dim
    g = A.gamma
    partial = np.dot(x.coords.num, g.num.reshape(m, m * m)).reshape(m, m)
    return AlgElement(RatArray(np.dot(y.coords.num, partial), x.coords.den * y.coords.den * g.den))


def power(A, x, n):
    if n < 0:
        raise UsageError("negative powers need invert_element")
    result = A.identity
    base = x
    while n:
        if n & 1:
            result = multiply(A, result, base)
        n >>= 1
        if n:
            base = multiply(A, base, base)
    return result


def regular_representation(A, x):
    """Matrix of left multiplication by x; column j holds x * b_j."""
    _check_dim(A, x)
    m = A.dim
    rows = np.dot(x.coords.num, A.gamma.num.reshape(m, m * m)).reshape(m, m)
    return RatArray(rows.T, x.coords.den * A.gamma.den)


def right_representation(A, x):
    """Matrix of right multiplication by x; column j holds b_j * x."""
    _check_dim(A, x)
    cols = np.tensordot(A.gamma.num, x.coords.num, axes=([1], [0]))  # [j, k]
    return RatArray(cols.T, x.coords.den * A.gamma.den)


def evaluate(A, f, x):
    """f(x) in A, by Horner's rule."""
    _check_dim(A, x)
    acc = A.scalar(0)
    for c in reversed(f.coeffs):
        acc = multiply(A, acc, x) + A.scalar(c)
    return acc


def minimal_polynomial(A, x):
    """Monic polynomial of least degree annihilating x.

    Stacks 1, x, x^2, ... and stops at the first power lying in the span of
    the earlier ones; the solve coefficients give the polynomial.
    """
    _check_dim(A, x)
    left = regular_representation(A, x)
    v = A.identity.coords
    powers = [v]
    for _ in range(A.dim):
        v = left @ v
        span = _stack_columns(powers)
        coeffs = solve_linear(span, v)
        if coeffs is not None:
            return Polynomial(tuple(-c for c in coeffs.entries) + (Fraction(1),))
        powers.append(v)
    raise AssertionError("minimal polynomial degree exceeded the dimension")


def _stack_columns(vectors):
    den = lcm(*(v.den for v in vectors))
    return RatArray(np.stack([v.num * (den // v.den) for v in vectors], axis=1), den)


def invert_element(A, x):
    """Two-sided inverse of x, or None if x is a zero divisor (or zero)."""
    _check_dim(A, x)
    y = solve_linear(regular_representation(A, x), A.identity.coords)
    if y is None:
        return None
    y = AlgElement(y)
    if multiply(A, x, y) != A.identity or multiply(A, y, x) != A.identity:
        return None
    return y


def center_basis(A):
    """Basis of the center {z : z b_j = b_j z for all j}."""
    m = A.dim
    g = A.gamma.num
    system = (g - g.transpose(1, 0, 2)).transpose(1, 2, 0).reshape(m * m, m)
    return [AlgElement(v) for v in kernel_basis(RatArray(system))]


# -- isomorphisms ---------------------------------------------------------

def _as_iso(f):
    return f if isinstance(f, Isomorphism) else Isomorphism.of(f)


def compose_iso(f, g):
    """The map f after g."""
    f, g = _as_iso(f), _as_iso(g)
    if g.target_dim != f.source_dim:
        raise UsageError(f"cannot compose: {g.target_dim}-dim target into {f.source_dim}-dim source")
    return Isomorphism(f.matrix @ g.matrix)


def invert_iso(f):
    inv = invert_matrix(_as_iso(f).matrix)
    if inv is None:
        raise UsageError("map is singular and has no inverse")
    return Isomorphism(inv)


def verify_isomorphism(A, B, f):
    """True iff f is a bijective unital multiplicative map from A to B."""
    try:
        f = _as_iso(f)
    except (UsageError, ValueError, TypeError):
        return False
    m = A.dim
    if B.dim != m or f.matrix.shape != (m, m):
        return False
    if f(A.identity) != B.identity:
        return False
    F, dF = f.matrix.num, f.matrix.den
    ga, gb = A.gamma, B.gamma
    image_of_products = np.tensordot(ga.num, F, axes=([2], [1]))
    half = np.tensordot(F, gb.num, axes=([0], [0]))  # [i, b, t]
    product_of_images = np.tensordot(half, F, axes=([1], [0])).transpose(0, 2, 1)
    if not (image_of_products * (dF * gb.den) == product_of_images * ga.den).all():
        return False
    return determinant(f.matrix) != 0


def _transport(A, T, T_inv):
    m = A.dim
    Tn, Un, g = T.num, T_inv.num, A.gamma
    step = np.tensordot(Tn, g.num, axes=([0], [0]))        # [i, b, s]
    step = np.tensordot(step, Tn, axes=([1], [0]))         # [i, s, j]
    step = np.tensordot(step, Un, axes=([1], [1]))         # [i, j, t]
    gamma = RatArray(step.reshape(m, m, m), T.den * T.den * g.den * T_inv.den)
    iso = Isomorphism(T_inv)
    # a basis change of a valid algebra is valid; the identity is carried along
    return Algebra._trusted(gamma, iso(A.identity)), iso


def change_basis(A, T):
    """Re-present A in the basis whose i-th vector is column i of T.

    Returns (B, iso) where iso maps A-coordinates to B-coordinates.
    """
    T = RatArray.of(T)
    if T.shape != (A.dim, A.dim):
        raise UsageError(f"basis change must be {A.dim}x{A.dim}, got {T.shape}")
    T_inv = invert_matrix(T)
    if T_inv is None:
        raise UsageError("basis change matrix is singular")
    return _transport(A, T, T_inv)


def conjugation_isomorphism(A, r):
    """Basis change by the inner automorphism x -> r^-1 x r.

    None if r is not invertible.  An inner automorphism preserves the
    structure constants, so B has the same gamma as A; the returned map is
    the automorphism itself, written as A -> B.
    """
    r_inv = invert_element(A, r)
    if r_inv is None:
        return None
    T = regular_representation(A, r_inv) @ right_representation(A, r)
    return change_basis(A, T)


def random_invertible_matrix(m, height, rng, max_tries=MAX_TRIES):
    """Uniform integer m x m matrix with entries in [-height, height], resampled until invertible.

    Returns (T, T^-1).
    """
    for _ in range(max_tries):
        T = RatArray([[rng.randint(-height, height) for _ in range(m)] for _ in range(m)])
        T_inv = invert_matrix(T)
        if T_inv is not None:
            return T, T_inv
    raise RandomnessError(f"no invertible {m}x{m} matrix in {max_tries} draws")


def random_unimodular_matrix(m, rng, steps=None):
    """Integer matrix of determinant +-1: a signed permutation followed by
    ``steps`` random elementary row additions.  Returns (T, T^-1), both integral.
    """
    steps = m if steps is None else steps
    perm = list(range(m))
    rng.shuffle(perm)
    T = np.zeros((m, m), dtype=object)
    for i, p in enumerate(perm):
        T[i, p] = rng.choice((-1, 1))
    if m > 1:
        for _ in range(steps):
            i, j = rng.sample(range(m), 2)
            T[i] = T[i] + rng.choice((-1, 1)) * T[j]
    T = RatArray(T)
    return T, invert_matrix(T)


def random_basis_change(A, height, rng, unimodular=False):
    """Fresh random presentation of A: (B, iso) with iso verified A -> B by construction."""
    if unimodular:
        T, T_inv = random_unimodular_matrix(A.dim, rng)
    else:
        T, T_inv = random_invertible_matrix(A.dim, height, rng)
    return _transport(A, T, T_inv)


# -- constructions ----------------------------------------------------------

def tensor_product(A, B):
    """A (x) B with basis b_i (x) c_p at index i * dim(B) + p."""
    ma, mb = A.dim, B.dim
    outer = np.multiply.outer(A.gamma.num, B.gamma.num)      # [i, j, k, p, q, r]
    gamma = outer.transpose(0, 3, 1, 4, 2, 5).reshape(ma * mb, ma * mb, ma * mb)
    return Algebra(RatArray(gamma, A.gamma.den * B.gamma.den))


def integral_scaling(A):
    """Scale every basis vector by N = lcm of the gamma denominators.

    The scaled structure constants are N * gamma, all integers.
    Returns (scaled algebra, N).
    """
    N = A.gamma.den
    if N == 1:
        return A, 1
    return Algebra(RatArray(A.gamma.num)), N


def random_element(A, height, rng):
    """Element with independent uniform integer coordinates in [-height, height]."""
    if height < 1:
        raise UsageError("height bound must be at least 1")
    return AlgElement(RatArray([rng.randint(-height, height) for _ in range(A.dim)]))


def random_invertible_element(A, height, rng, max_tries=MAX_TRIES):
    for _ in range(max_tries):
        x = random_element(A, height, rng)
        x_inv = invert_element(A, x)
        if x_inv is not None:
            return x, x_inv
    raise RandomnessError(f"no invertible element in {max_tries} draws")


def find_zero_divisor(A, rng, tries=200):
    """Search for a nonzero zero divisor by sampling sparse elements.

    Draws sums of one or two signed basis vectors; whenever the minimal
    polynomial has a rational root c, x - c is a zero divisor.  Returns the
    zero divisor or None.
    """
    m = A.dim
    for _ in range(tries):
        x = A.basis(rng.randrange(m)) * rng.choice((-1, 1))
        if rng.random() < 0.5:
            x = x + A.basis(rng.randrange(m)) * rng.choice((-1, 1))
        f = minimal_polynomial(A, x)
        if f.degree < 2:
            continue
        for c in f.rational_roots():
            z = x - A.scalar(c)
            if not z.is_zero():
                return z
    return None
