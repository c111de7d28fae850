"""Exception hierarchy shared by every csazkp module."""


class CsaError(Exception):
    """Base class for all library errors."""


class UsageError(CsaError, ValueError):
    """Bad arguments: dimension mismatch, invalid parameter combination."""


class StructureError(CsaError, ValueError):
    """A structure-constant tensor does not define a unital associative algebra."""

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class RandomnessError(CsaError, RuntimeError):
    """A rejection-sampling loop hit its retry cap."""


class SimulationError(RandomnessError):
    """The zero-knowledge simulator exhausted its restart budget."""


class ChallengeRejected(CsaError):
    """The prover refused a malformed verifier challenge."""


class DecodeError(CsaError, ValueError):
    """Bytes could not be decoded into the expected value.

    ``position`` is a byte offset for syntax errors and a field path
    (e.g. ``"gamma[17]"``) for dimension and validation errors.
    """

    kind = "decode"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class SyntaxDecodeError(DecodeError):
    kind = "syntax"


class DimensionDecodeError(DecodeError):
    kind = "dimension"


class ValidationDecodeError(DecodeError):
    kind = "validation"


class SessionError(CsaError):
    """A prover/verifier session was aborted."""


class FramingError(SessionError):
    pass


class StateError(SessionError):
    """A message arrived out of protocol order."""


class SessionTimeout(SessionError, TimeoutError):
    pass


class DerivationError(RandomnessError):
    """Deterministic challenge derivation hit its retry cap."""
