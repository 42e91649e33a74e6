from __future__ import annotations


class PddlError(Exception):
    """Base class for parse and consistency errors.

    Carries an optional source position so the CLI can print
    ``file:line:column: message``.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 filename: str | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.filename = filename

    def location(self) -> str:
        parts = [self.filename or "<string>"]
        if self.line is not None:
            parts.append(str(self.line))
            if self.column is not None:
                parts.append(str(self.column))
        return ":".join(parts)

    def __str__(self) -> str:
        if self.line is None and self.filename is None:
            return self.message
        return f"{self.location()}: {self.message}"


class PddlSyntaxError(PddlError):
    pass


class UnsupportedFeature(PddlError):
    pass


class UndeclaredSymbol(PddlError):
    pass


class ArityMismatch(PddlError):
    pass


class NotApplicable(Exception):
    pass
