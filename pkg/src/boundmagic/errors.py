"""Exception hierarchy shared by all modules.

The CLI maps :class:`DomainError` to exit code 2 and :class:`ResourceError`
to exit code 3.
"""


class BoundMagicError(Exception):
    """Base class for package errors."""


class DomainError(BoundMagicError, ValueError):
    """An input violates the mathematical preconditions of an operation."""


class DimensionError(DomainError):
    """Operands act on different numbers of qubits."""


class ResourceError(BoundMagicError):
    """A requested computation exceeds the configured size cap."""


class CodeError(DomainError):
    """Base class for invalid stabilizer codes."""


class CodeFormatError(CodeError):
    """A code file could not be parsed."""


class NonCommutingError(CodeError):
    pass


class DependentGeneratorsError(CodeError):
    pass


class MinusIdentityError(CodeError):
    """The generated group contains -I, so the codespace is empty."""


class LogicalOperatorError(CodeError):
    pass


class TrivialCodeError(CodeError):
    """The code leaves one qubit untouched; see ``is_trivial``."""


class ZeroSuccessError(DomainError):
    """Postselection succeeds with (numerically) zero probability."""


class WitnessError(BoundMagicError):
    """Internal inconsistency while building a witness.

    Raised only if the canonical form is broken, which indicates a bug.
    """
