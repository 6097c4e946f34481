"""Exception types shared across the package."""


class HyperindError(Exception):
    """Base class for all package errors."""


class InvalidVertex(HyperindError):
    """A vertex id is outside the range 0..n-1."""


class InvalidUniformity(HyperindError):
    """An edge size is outside the admitted range 2..k."""


class InvalidArguments(HyperindError):
    """An argument combination violates an operation's precondition."""


class ParseError(HyperindError):
    """A hypergraph file is malformed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OutOfRegime(HyperindError):
    """Parameters fall outside the window a strict-mode schedule demands."""


class OutOfDomain(HyperindError):
    """A reference bound is evaluated where its formula is undefined."""


class PreconditionFailed(HyperindError):
    """A structural precondition failed; carries a witness when available."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ResidueNotBouquet(HyperindError):
    """A sampling pipeline exhausted its retry budget without an acceptable residue."""


class RoundCollapsed(HyperindError):
    """A semi-random round left no surviving vertices."""

    def __init__(self, message: str, state=None):
        self.state = state
        super().__init__(message)


class SchemaError(HyperindError):
    """Two reports use incompatible schema versions."""
