"""Exception hierarchy shared by all jetdisc modules."""


class JetdiscError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(JetdiscError):
    """Operands live in different polynomial rings."""


class ExactDivisionError(JetdiscError):
    """A division that was expected to be exact left a remainder."""


class ResourceLimitError(JetdiscError):
    """A configurable resource safeguard was exceeded.

    ``limit`` names the safeguard that fired (e.g. ``"max_degree"``).
    """

    def __init__(self, limit: str, message: str):
        super().__init__(message)
        self.limit = limit


class ValidationError(JetdiscError):
    """A precondition on user-supplied data does not hold."""


class NotAUnitError(JetdiscError):
    """Inversion was requested for a non-unit truncated series."""


class GenericityError(JetdiscError):
    """Independent genericity samples disagreed; see the sampling protocol."""


class SessionParseError(JetdiscError):
    """Syntax or resolution error in a session file."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col
