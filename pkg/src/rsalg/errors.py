"""Exception hierarchy shared by all modules."""


class RSAlgError(Exception):
    """Base class for every error raised by :mod:`rsalg`."""


class PreconditionError(RSAlgError, ValueError):
    """An operation was called outside its documented domain."""


class AlphabetMismatchError(PreconditionError):
    pass


class InvalidDecompositionError(PreconditionError):
    pass


class InvalidGeneratorError(PreconditionError):
    pass


class DegenerateRelatorError(PreconditionError):
    pass


class ResourceLimitError(RSAlgError):
    """A configured cap (enumeration size, degree) would be exceeded."""


class NeedsLargerBasisError(ResourceLimitError):
    """The element's leading degree is above the basis degree bound."""


class ParseError(PreconditionError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
