"""Canonical byte encodings of protocol values.

Rationals are ``num/den`` in lowest terms with the sign on the numerator.
Every other value is compact JSON (no whitespace, fixed key order) whose
scalars are rational strings.  Decoding is strict: input is accepted only
if it is byte-for-byte what :func:`encode_value` emits, except that an
algebra may use the sparse gamma form in place of the dense one.  The dense
form is the canonical one and the only one used for hashing.
"""

import json
import re
from fractions import Fraction
from math import gcd

import numpy as np

from .algebra import AlgElement, Algebra, Isomorphism
from .construction import VARIANTS, KeyPair, PublicKey
from .errors import (
    CsaError,
    DecodeError,
    DimensionDecodeError,
    SyntaxDecodeError,
    ValidationDecodeError,
)
from .linalg import RatArray, determinant
from .protocol import P2Challenge, Transcript1, Transcript2

MAX_DIM = 64
MAX_ARRAY_ENTRIES = MAX_DIM**3
_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)/([1-9][0-9]*)")
_HEX_SEED = re.compile(r"[0-9a-f]{64}")
_HASH_NAME = re.compile(r"[a-z0-9-]{1,32}")


def _dumps(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True, allow_nan=False)


def encode_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _entries(arr):
    d = arr.den
    return [f"{int(n) // g}/{d // g}" for n in arr.num.ravel() for g in (gcd(int(n), d),)]


# -- encoders -------------------------------------------------------------------

def _array_obj(a):
    return {"type": "array", "shape": list(a.shape), "entries": _entries(a)}


def _algebra_obj(A, compact=False):
    m = A.dim
    flat = A.gamma.num.ravel()
    nonzero = [idx for idx, v in enumerate(flat) if v]
    if compact and 3 * (flat.size - len(nonzero)) >= 2 * flat.size:
        entries = _entries(A.gamma)
        sparse = {f"{i // (m * m)},{(i // m) % m},{i % m}": entries[i] for i in nonzero}
        return {"type": "algebra", "dim": m, "sparse": sparse}
    return {"type": "algebra", "dim": m, "gamma": _entries(A.gamma)}


def _element_obj(x):
    return {"type": "element", "dim": x.dim, "coords": _entries(x.coords)}


def _iso_obj(f):
    return {"type": "isomorphism", "dim": f.source_dim, "matrix": _entries(f.matrix)}


def _public_obj(pk, compact=False):
    order = None
    if pk.order_scale is not None:
        order = {"scale": pk.order_scale, "bound": pk.order_bound}
    return {
        "type": "public_key",
        "variant": pk.variant,
        "k": pk.k,
        "height": pk.height,
        "A0": _algebra_obj(pk.A0, compact),
        "A1": _algebra_obj(pk.A1, compact),
        "element": None if pk.element is None else _element_obj(pk.element),
        "order": order,
    }


def _challenge_obj(c, compact=False):
    return {"type": "p2_challenge", "algebra": _algebra_obj(c.algebra, compact), "delta": _iso_obj(c.delta)}


def _obj(v, compact=False):
    from .signature import Signature

    if isinstance(v, RatArray):
        return _array_obj(v)
    if isinstance(v, Algebra):
        return _algebra_obj(v, compact)
    if isinstance(v, AlgElement):
        return _element_obj(v)
    if isinstance(v, Isomorphism):
        return _iso_obj(v)
    if isinstance(v, PublicKey):
        return _public_obj(v, compact)
    if isinstance(v, KeyPair):
        return {"type": "secret_key", "phi": _iso_obj(v.secret_phi)}
    if isinstance(v, P2Challenge):
        return _challenge_obj(v, compact)
    if isinstance(v, Signature):
        return {
            "type": "signature",
            "hash": v.hash_name,
            "commitment": _algebra_obj(v.commitment, compact),
            "response": _element_obj(v.response),
            "seed": v.seed.hex(),
        }
    if isinstance(v, Transcript1):
        return {
            "type": "transcript1",
            "commitment": _algebra_obj(v.commitment, compact),
            "challenge": v.challenge,
            "response": _iso_obj(v.response),
            "accepted": bool(v.accepted),
        }
    if isinstance(v, Transcript2):
        return {
            "type": "transcript2",
            "commitment": _algebra_obj(v.commitment, compact),
            "challenge": _challenge_obj(v.challenge, compact),
            "response": None if v.response is None else _element_obj(v.response),
            "accepted": bool(v.accepted),
        }
    raise TypeError(f"no canonical encoding for {type(v).__name__}")


def encode_value(v, compact=False):
    """Canonical bytes for v.

    With ``compact`` an algebra whose gamma is at least two-thirds zeros is
    written as a sparse map; the default dense form is the hashing form.
    A KeyPair encodes to its secret part only.
    """
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return encode_rational(v).encode("ascii")
    return _dumps(_obj(v, compact)).encode("ascii")


# -- decoders -------------------------------------------------------------------

def parse_rational(s, where="value"):
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s):
        raise SyntaxDecodeError("malformed rational", where)
    if s.startswith("-0"):
        raise SyntaxDecodeError("negative zero is not canonical", where)
    num_s, den_s = s.split("/")
    num, den = int(num_s), int(den_s)
    if gcd(num, den) != 1:
        raise SyntaxDecodeError(f"rational {s} is not in lowest terms", where)
    return Fraction(num, den)


def _keys(obj, keys, where):
    if not isinstance(obj, dict):
        raise SyntaxDecodeError("expected an object", where)
    if list(obj) != keys:
        raise SyntaxDecodeError(f"expected keys {keys}, got {list(obj)}", where)


def _tag(obj, tag, where):
    if not isinstance(obj, dict) or obj.get("type") != tag:
        raise SyntaxDecodeError(f"expected a {tag!r} object", where)


def _int(v, where, lo=None, hi=None):
    if type(v) is not int:
        raise SyntaxDecodeError("expected an integer", where)
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise DimensionDecodeError(f"integer {v} outside [{lo}, {hi}]", where)
    return v


def _rational_list(v, length, where):
    if not isinstance(v, list):
        raise SyntaxDecodeError("expected a list", where)
    if len(v) != length:
        raise DimensionDecodeError(f"expected {length} entries, got {len(v)}", where)
    return [parse_rational(s, f"{where}[{i}]") for i, s in enumerate(v)]


def _array_from(obj, where):
    _tag(obj, "array", where)
    _keys(obj, ["type", "shape", "entries"], where)
    shape = obj["shape"]
    if not isinstance(shape, list) or len(shape) > 3:
        raise SyntaxDecodeError("expected a shape list of length at most 3", f"{where}.shape")
    size = 1
    for i, n in enumerate(shape):
        size *= _int(n, f"{where}.shape[{i}]", 0, MAX_ARRAY_ENTRIES)
    if size > MAX_ARRAY_ENTRIES:
        raise DimensionDecodeError("array too large", f"{where}.shape")
    vals = _rational_list(obj["entries"], size, f"{where}.entries")
    if not shape:
        raise DimensionDecodeError("zero-dimensional arrays are not encoded", f"{where}.shape")
    return RatArray.of(np.array(vals, dtype=object).reshape(shape))


def _algebra_from(obj, where):
    _tag(obj, "algebra", where)
    if not isinstance(obj, dict) or len(obj) != 3:
        raise SyntaxDecodeError("malformed algebra object", where)
    sparse = "sparse" in obj
    _keys(obj, ["type", "dim", "sparse" if sparse else "gamma"], where)
    m = _int(obj["dim"], f"{where}.dim", 1, MAX_DIM)
    if sparse:
        vals = _sparse_gamma(obj["sparse"], m, f"{where}.sparse")
    else:
        vals = _rational_list(obj["gamma"], m**3, f"{where}.gamma")

    gamma = RatArray.of(np.array(vals, dtype=object).reshape(m, m, m))
    try:
        return Algebra(gamma)
    except CsaError as exc:
        raise ValidationDecodeError(str(exc), where) from None


def _sparse_gamma(obj, m, where):
    if not isinstance(obj, dict):
        raise SyntaxDecodeError("expected an object", where)
    vals = [Fraction(0)] * (m**3)
    last = -1
    for key, val in obj.items():
        parts = key.split(",")
        if len(parts) != 3 or not all(p.isdigit() and (p == "0" or p[0] != "0") for p in parts):
            raise SyntaxDecodeError(f"malformed index {key!r}", where)
        i, j, k = (int(p) for p in parts)
        if max(i, j, k) >= m:
            raise DimensionDecodeError(f"index {key} out of range for dimension {m}", where)
        flat = (i * m + j) * m + k
        if flat <= last:
            raise SyntaxDecodeError("sparse indices must be strictly increasing", f"{where}[{key}]")
        last = flat
        x = parse_rational(val, f"{where}[{key}]")
        if x == 0:
            raise SyntaxDecodeError("explicit zero in sparse form", f"{where}[{key}]")
        vals[flat] = x
    return vals


def _element_from(obj, where, dim=None):
    _tag(obj, "element", where)
    _keys(obj, ["type", "dim", "coords"], where)
    m = _int(obj["dim"], f"{where}.dim", 1, MAX_DIM)
    if dim is not None and m != dim:
        raise DimensionDecodeError(f"element of dimension {m}, expected {dim}", where)
    return AlgElement(RatArray.of(_rational_list(obj["coords"], m, f"{where}.coords")))


def _iso_from(obj, where, dim=None):
    _tag(obj, "isomorphism", where)
    _keys(obj, ["type", "dim", "matrix"], where)
    m = _int(obj["dim"], f"{where}.dim", 1, MAX_DIM)
    if dim is not None and m != dim:
        raise DimensionDecodeError(f"map of dimension {m}, expected {dim}", where)

    vals = _rational_list(obj["matrix"], m * m, f"{where}.matrix")
    mat = RatArray.of(np.array(vals, dtype=object).reshape(m, m))
    if determinant(mat) == 0:
        raise ValidationDecodeError("isomorphism matrix is singular", where)
    return Isomorphism(mat)


def _public_from(obj, where):
    _tag(obj, "public_key", where)
    _keys(obj, ["type", "variant", "k", "height", "A0", "A1", "element", "order"], where)
    variant = obj["variant"]
    if variant not in VARIANTS:
        raise ValidationDecodeError(f"unknown variant {variant!r}", f"{where}.variant")
    k = _int(obj["k"], f"{where}.k", 2, 8)
    height = _int(obj["height"], f"{where}.height", 1, 2**32)
    A0 = _algebra_from(obj["A0"], f"{where}.A0")
    A1 = _algebra_from(obj["A1"], f"{where}.A1")
    if A0.dim != k * k or A1.dim != k * k:
        raise DimensionDecodeError(f"algebras must have dimension k^2 = {k * k}", where)
    element = None if obj["element"] is None else _element_from(obj["element"], f"{where}.element", k * k)
    scale = bound = None
    if obj["order"] is not None:
        _keys(obj["order"], ["scale", "bound"], f"{where}.order")
        scale = _int(obj["order"]["scale"], f"{where}.order.scale", 1)
        bound = _int(obj["order"]["bound"], f"{where}.order.bound", 1)
    if (variant == "order") != (scale is not None):
        raise ValidationDecodeError("order data present iff variant is 'order'", f"{where}.order")
    if variant == "order" and not (A0.gamma.is_integral() and A1.gamma.is_integral()):
        raise ValidationDecodeError("order keys need integral structure constants", where)
    return PublicKey(variant, k, height, A0, A1, element, scale, bound)


def _challenge_from(obj, where):
    _tag(obj, "p2_challenge", where)
    _keys(obj, ["type", "algebra", "delta"], where)
    C = _algebra_from(obj["algebra"], f"{where}.algebra")
    return P2Challenge(C, _iso_from(obj["delta"], f"{where}.delta", C.dim))


def _signature_from(obj, where):
    from .signature import Signature

    _tag(obj, "signature", where)
    _keys(obj, ["type", "hash", "commitment", "response", "seed"], where)
    name = obj["hash"]
    if not isinstance(name, str) or not _HASH_NAME.fullmatch(name):
        raise SyntaxDecodeError("malformed hash identifier", f"{where}.hash")
    B = _algebra_from(obj["commitment"], f"{where}.commitment")
    response = _element_from(obj["response"], f"{where}.response", B.dim)
    seed = obj["seed"]
    if not isinstance(seed, str) or not _HEX_SEED.fullmatch(seed):
        raise SyntaxDecodeError("seed must be 64 lowercase hex digits", f"{where}.seed")
    return Signature(B, response, bytes.fromhex(seed), name)


def _bool(v, where):
    if type(v) is not bool:
        raise SyntaxDecodeError("expected a boolean", where)
    return v


def _transcript1_from(obj, where):
    _tag(obj, "transcript1", where)
    _keys(obj, ["type", "commitment", "challenge", "response", "accepted"], where)
    B = _algebra_from(obj["commitment"], f"{where}.commitment")
    i = _int(obj["challenge"], f"{where}.challenge", 0, 1)
    delta = _iso_from(obj["response"], f"{where}.response", B.dim)
    return Transcript1(B, i, delta, _bool(obj["accepted"], f"{where}.accepted"))


def _transcript2_from(obj, where):
    _tag(obj, "transcript2", where)
    _keys(obj, ["type", "commitment", "challenge", "response", "accepted"], where)
    B = _algebra_from(obj["commitment"], f"{where}.commitment")
    ch = _challenge_from(obj["challenge"], f"{where}.challenge")
    response = None if obj["response"] is None else _element_from(obj["response"], f"{where}.response", B.dim)
    return Transcript2(B, ch, response, _bool(obj["accepted"], f"{where}.accepted"))


def _secret_from(obj, where):
    _tag(obj, "secret_key", where)
    _keys(obj, ["type", "phi"], where)
    return _iso_from(obj["phi"], f"{where}.phi")


_DECODERS = {
    "array": _array_from,
    "algebra": _algebra_from,
    "element": _element_from,
    "isomorphism": _iso_from,
    "public_key": _public_from,
    "secret_key": _secret_from,
    "p2_challenge": _challenge_from,
    "signature": _signature_from,
    "transcript1": _transcript1_from,
    "transcript2": _transcript2_from,
}


def _type_name(expected):
    if isinstance(expected, str):
        return expected
    from .signature import Signature

    names = {
        Fraction: "rational", RatArray: "array", Algebra: "algebra", AlgElement: "element",
        Isomorphism: "isomorphism", PublicKey: "public_key", P2Challenge: "p2_challenge",
        Signature: "signature", Transcript1: "transcript1", Transcript2: "transcript2",
    }
    return names[expected]


def _pairs(pairs):
    keys = [k for k, _ in pairs]
    if len(set(keys)) != len(keys):
        raise SyntaxDecodeError("duplicate key")
    return dict(pairs)


def _no_float(s):
    raise SyntaxDecodeError(f"non-integer number {s!r}")


def decode_value(data, expected):
    """Strictly decode bytes produced by :func:`encode_value`.

    ``expected`` is a type name (``"algebra"``, ``"signature"``, ...) or the
    corresponding class.  Raises SyntaxDecodeError, DimensionDecodeError or
    ValidationDecodeError; never anything else.  Decoded algebras are fully
    validated.  ``"secret_key"`` decodes to the secret isomorphism.
    """
    name = _type_name(expected)
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise SyntaxDecodeError("expected bytes")
    try:
        text = bytes(data).decode("ascii")
    except UnicodeDecodeError as exc:
        raise SyntaxDecodeError("non-ASCII byte", exc.start) from None
    try:
        if name == "rational":
            return parse_rational(text, 0)
        if name not in _DECODERS:
            raise ValueError(f"unknown value type {name!r}")
        try:
            obj = json.loads(text, object_pairs_hook=_pairs, parse_float=_no_float, parse_constant=_no_float)
        except json.JSONDecodeError as exc:
            raise SyntaxDecodeError(exc.msg, exc.pos) from None
        again = _dumps(obj)
        if again != text:
            pos = next((i for i, (a, b) in enumerate(zip(again, text)) if a != b), min(len(again), len(text)))
            raise SyntaxDecodeError("non-canonical formatting", pos)
        return _DECODERS[name](obj, "$")
    except DecodeError:
        raise
    except (ValueError, TypeError, KeyError, IndexError, AttributeError, ArithmeticError, RecursionError) as exc:
        raise SyntaxDecodeError(f"{type(exc).__name__}: {exc}") from None
