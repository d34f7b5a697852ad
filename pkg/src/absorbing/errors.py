"""Exception types shared across the package."""


class AbsorbingError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpec(AbsorbingError):
    """A ring or module construction request is malformed or violates an axiom."""


class ParseError(InvalidSpec):
    """The ring DSL could not be parsed.

    ``token`` is the 1-based index of the offending token and ``column`` the
    0-based character offset into the source string.
    """

    def __init__(self, message: str, token: int, column: int):
        super().__init__(f"{message} (token {token}, column {column})")
        self.token = token
        self.column = column


class CapExceeded(AbsorbingError):
    """A ring is larger than the configured order cap."""


class DomainError(AbsorbingError):
    """An operation was called outside its domain (ring mismatch, improper ideal...)."""


class InternalError(AbsorbingError):
    """An invariant that must always hold was violated.

    Raised when a computed classification profile breaks the ideal-class
    hierarchy. That either falsifies a published implication or reveals a bug,
    so it is never swallowed.
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload
