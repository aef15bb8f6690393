"""Exception types shared across the package."""


class UagError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(UagError):
    """An enumeration would exceed its configured budget.

    `required` is the count the operation would need (or had already
    consumed when the budget ran out); `cap` is the configured limit.
    """

    def __init__(self, what: str, required: int, cap: int):
        super().__init__(f"{what}: needs {required} > cap {cap}")
        self.what = what
        self.required = required
        self.cap = cap


class TermSyntaxError(UagError):
    """Parse failure; `column` is 1-based within the source line."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


class SignatureError(UagError):
    """Ill-formed signature, table, or a signature mismatch between values."""


class FileFormatError(UagError):
    """Malformed algebra / signature / system / structure-constant file."""
