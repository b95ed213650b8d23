"""Exception types shared across the package."""


class VbgcError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(VbgcError):
    pass


class SubspaceNotPreserved(VbgcError):
    pass


class NotComposable(VbgcError):
    pass


class NotInvertible(VbgcError):
    pass


class NotMorita(VbgcError):
    pass


class InvalidInputTable(VbgcError):
    pass


class IndexOutOfRange(VbgcError):
    pass


class ShapeMismatch(VbgcError):
    pass


class FlowNotClosedForm(VbgcError):
    pass


class RankDrop(VbgcError):
    pass


class ParseError(VbgcError):
    """Raised on malformed expression or problem-file input."""


class BudgetExceeded(VbgcError):
    """Raised when nerve enumeration exceeds the configured tuple budget."""


class CheckFailed(VbgcError):
    """Raised by the CLI when a verification gate does not pass."""
