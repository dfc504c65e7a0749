"""Exception types shared across the package."""


class PolyplexError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class ShapeError(PolyplexError):
    pass


class PreconditionError(PolyplexError):
    pass


class GuardError(PolyplexError):
    """An enumeration or canonicalization would exceed its size guard."""


class ChecksumError(PolyplexError):
    pass


class FormatError(PolyplexError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
