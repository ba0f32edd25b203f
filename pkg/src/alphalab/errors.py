class InputError(ValueError):
    """Raised for arguments outside an operation's domain."""


class ParseError(InputError):
    """Malformed graph text. ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
