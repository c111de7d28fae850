"""Exact rational linear algebra.

Arrays are stored fraction-free: an object ndarray of Python ints together
with one positive common denominator, reduced so that the gcd of every
numerator and the denominator is 1.  That makes the representation
canonical, so structural equality is value equality.  Elimination is
Bareiss-style Gauss-Jordan and never leaves the integers.
"""

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .errors import UsageError

__all__ = [
    "RatArray",
    "as_rational",
    "determinant",
    "invert_matrix",
    "kernel_basis",
    "rank",
    "solve_linear",
]


def as_rational(value):
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: nothing in this package is allowed to be inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float, np.floating)):
        raise UsageError(f"refusing inexact or boolean scalar {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise UsageError(f"cannot interpret {value!r} as a rational")


def _int_array(values):
    arr = np.array(values, dtype=object)
    if arr.dtype != object:
        arr = arr.astype(object)
    return arr


class RatArray:
    """Dense n-dimensional array of exact rationals.

    ``num`` is an object ndarray of Python ints and ``den`` a positive int;
    entry ``idx`` has value ``num[idx] / den``.  Matrices (ndim 2), vectors
    (ndim 1) and structure-constant tensors (ndim 3) all use this type.
    Instances are treated as immutable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _int_array(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("RatArray denominator is zero")
        if den < 0:
            num, den = -num, -den
        if den != 1 and num.size:
            g = gcd(int(np.gcd.reduce(num.ravel())), den)
            if g != 1:
                num = num // g
                den //= g
        elif den != 1:
            den = 1
        num.flags.writeable = False
        self.num = num
        self.den = den

    @classmethod
    def of(cls, data):
        """Build from nested sequences of ints, Fractions or ``"p/q"`` strings."""
        if isinstance(data, RatArray):
            return data
        raw = np.array(data, dtype=object)
        fracs = [as_rational(v) for v in raw.ravel()]
        den = lcm(*(f.denominator for f in fracs)) if fracs else 1
        num = np.array([f.numerator * (den // f.denominator) for f in fracs], dtype=object)
        return cls(num.reshape(raw.shape), den)

    @classmethod
    def zeros(cls, shape):
        return cls(np.zeros(shape, dtype=object))

    @classmethod
    def identity(cls, n):
        eye = np.zeros((n, n), dtype=object)
        for i in range(n):
            eye[i, i] = 1
        return cls(eye)

    # -- shape -----------------------------------------------------------
    @property
    def shape(self):
        return self.num.shape

    @property
    def ndim(self):
        return self.num.ndim

    @property
    def size(self):
        return self.num.size

    @property
    def rows(self):
        return self.num.shape[0]

    @property
    def cols(self):
        return self.num.shape[1]

    @property
    def entries(self):
        """Row-major list of Fractions."""
        return [Fraction(int(n), self.den) for n in self.num.ravel()]

    def __len__(self):
        return self.num.shape[0]

    def reshape(self, *shape):
        return RatArray(self.num.reshape(*shape), self.den)

    def transpose(self, *axes):
        return RatArray(self.num.transpose(*axes), self.den)

    @property
    def T(self):
        return self.transpose()

    def tolist(self):
        return np.vectorize(lambda n: Fraction(int(n), self.den), otypes=[object])(self.num).tolist()

    def __getitem__(self, idx):
        out = self.num[idx]
        if isinstance(out, np.ndarray):
            return RatArray(out, self.den)
        return Fraction(int(out), self.den)

    def is_integral(self):
        return self.den == 1

    def is_zero(self):
        return not self.num.any()

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatArray):
            return other
        return RatArray.of(other)

    def __neg__(self):
        return RatArray(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other.shape != self.shape:
            raise UsageError(f"shape mismatch {self.shape} vs {other.shape}")
        return RatArray(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, scalar):
        if isinstance(scalar, RatArray):
            return NotImplemented
        s = as_rational(scalar)
        return RatArray(self.num * s.numerator, self.den * s.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = as_rational(scalar)
        if s == 0:
            raise ZeroDivisionError("division of RatArray by zero")
        return RatArray(self.num * s.denominator, self.den * s.numerator)

    def __matmul__(self, other):
        other = self._coerce(other)
        if self.ndim not in (1, 2) or other.ndim not in (1, 2) or self.shape[-1] != other.shape[0]:
            raise UsageError(f"cannot multiply shapes {self.shape} and {other.shape}")
        return RatArray(np.dot(self.num, other.num), self.den * other.den)

    def __eq__(self, other):
        if not isinstance(other, RatArray):
            return NotImplemented
        return self.den == other.den and self.shape == other.shape and bool((self.num == other.num).all())

    def __hash__(self):
        return hash((self.shape, self.den, tuple(self.num.ravel())))

    def __repr__(self):
        if self.size <= 16:
            body = ", ".join(str(f) for f in self.entries)
            return f"RatArray(shape={self.shape}, [{body}])"
        return f"RatArray(shape={self.shape}, den={self.den})"


def _as_matrix(A):
    A = RatArray.of(A)
    if A.ndim != 2:
        raise UsageError(f"expected a matrix, got shape {A.shape}")
    return A


def _gauss_jordan(M, ncols=None):
    """Fraction-free Gauss-Jordan elimination of an integer object matrix.

    Pivots are searched only among the first ``ncols`` columns, in column
    order, taking the first nonzero row.  On return every pivot column is
    ``d`` times a unit vector, where ``d`` is the last pivot, and every
    division performed along the way was exact.
    Returns (reduced matrix, pivot columns, d, permutation sign).
    """
    M = np.array(M, dtype=object)
    nrows, total = M.shape
    ncols = total if ncols is None else ncols
    pivots = []
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
            sign = -sign
        piv = M[r, c]
        others = np.concatenate((np.arange(r), np.arange(r + 1, nrows)))
        if others.size:
            M[others] = (piv * M[others] - np.outer(M[others, c], M[r])) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, prev, sign


def rank(A):
    A = _as_matrix(A)
    if A.size == 0:
        return 0
    return len(_gauss_jordan(A.num)[1])


def determinant(A):
    """Exact determinant via fraction-free elimination."""
    A = _as_matrix(A)
    n = A.rows
    if A.cols != n:
        raise UsageError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    _, pivots, d, sign = _gauss_jordan(A.num)
    if len(pivots) < n:
        return Fraction(0)
    return Fraction(sign * d, A.den ** n)


def solve_linear(A, b):
    """Return one x with ``A @ x == b``, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    A = _as_matrix(A)
    b = RatArray.of(b)
    if b.ndim != 1 or b.shape[0] != A.rows:
        raise UsageError(f"right-hand side of shape {b.shape} does not fit {A.shape}")
    m, n = A.shape
    if m == 0:
        return RatArray.zeros(n)
    aug = np.empty((m, n + 1), dtype=object)
    aug[:, :n] = A.num * b.den
    aug[:, n] = b.num * A.den
    M, pivots, d, _ = _gauss_jordan(aug, ncols=n)
    r = len(pivots)
    if M[r:, n].any():
        return None
    x = np.zeros(n, dtype=object)
    for row, c in enumerate(pivots):
        x[c] = M[row, n]
    return RatArray(x, d if r else 1)


def invert_matrix(A):
    """Exact inverse, or None when A is singular."""
    A = _as_matrix(A)
    n = A.rows
    if A.cols != n:
        raise UsageError(f"cannot invert non-square matrix of shape {A.shape}")
    if n == 0:
        return A
    aug = np.zeros((n, 2 * n), dtype=object)
    aug[:, :n] = A.num
    for i in range(n):
        aug[i, n + i] = 1
    M, pivots, d, _ = _gauss_jordan(aug, ncols=n)
    if len(pivots) < n:
        return None
    return RatArray(M[:, n:] * A.den, d)


def kernel_basis(A):
    """Basis of the right null space of A.

    One vector per free column, each scaled so its first nonzero entry is 1.
    """
    A = _as_matrix(A)
    m, n = A.shape
    if m == 0:
        pivots, M, d = [], None, 1
    else:
        M, pivots, d, _ = _gauss_jordan(A.num)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = np.zeros(n, dtype=object)
        v[f] = d
        for row, c in enumerate(pivots):
            v[c] = -M[row, f]
        lead = v[np.flatnonzero(v)[0]]
        basis.append(RatArray(v, lead))
    return basis
