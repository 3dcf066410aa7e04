"""Exception types shared across the engine."""


class EngineError(ValueError):
    """An operation was called outside its domain (precondition violated)."""


class ParseError(ValueError):
    """Malformed surface syntax.

    Carries the 1-based ``line`` and ``column`` of the offending token and
    the set of tokens that would have been accepted there.
    """

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
