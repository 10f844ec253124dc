"""Exception hierarchy shared by the kernel and the CLI."""


class CliffError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CliffError):
    """Syntax error in an expression or textual form.

    `pos` is the 1-based character offset of the offending token
    (or of end-of-input for truncated text).
    """

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)
        self.pos = pos


class PreconditionError(CliffError):
    """An operation was called outside its stated preconditions."""


class ContextMismatch(PreconditionError):
    """Operands belong to different algebra contexts."""


class VerificationError(CliffError):
    """A verification suite or route-agreement check failed."""


class TableError(CliffError):
    """Basis-table persistence problem: malformed file, bad checksum,
    signature mismatch, or failed revalidation."""
