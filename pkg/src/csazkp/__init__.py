"""Zero-knowledge identification and signatures from isomorphisms of
central simple algebras given by structure constants.

Everything is exact: rationals are stored fraction-free in numpy object
arrays (:class:`RatArray`), and no floating point is used anywhere.
"""

from .algebra import (
    AlgElement,
    Algebra,
    Isomorphism,
    Polynomial,
    center_basis,
    change_basis,
    compose_iso,
    conjugation_isomorphism,
    evaluate,
    find_zero_divisor,
    integral_scaling,
    invert_element,
    invert_iso,
    minimal_polynomial,
    multiply,
    new_algebra,
    power,
    random_basis_change,
    random_element,
    random_invertible_element,
    regular_representation,
    tensor_product,
    verify_isomorphism,
)
from .construction import (
    VARIANTS,
    KeyPair,
    PublicKey,
    algebra_from_matrices,
    build_division_algebra,
    cyclic_algebra,
    cyclic_element,
    cyclic_field,
    keygen,
    keypair_from_parts,
    quadratic_field,
    random_matrix_presentation,
)
from .encoding import decode_value, encode_value
from .errors import *  # noqa: F401,F403
from .linalg import RatArray, determinant, invert_matrix, kernel_basis, rank, solve_linear
from .protocol import (
    BitGuessingCheater,
    HonestProver,
    P2Challenge,
    Transcript1,
    Transcript2,
    extract_witness,
    p1_commit,
    p1_respond,
    p1_verify,
    p2_challenge,
    p2_respond,
    p2_verify,
    run_identification,
    run_protocol2,
    simulate_transcript,
)
from .signature import HashRandom, Signature, derive_challenge, sign, verify_signature
from .wire import SessionConfig, SessionResult, replay_session, run_session

__version__ = "0.1.0"
