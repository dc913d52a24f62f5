"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class EdgeListParseError(ValidationError):
    """Malformed edge-list text; carries the offending 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class UndefinedQualityError(ValidationError):
    """The quality function is undefined (graph carries no edge weight)."""


class UndefinedDiagnosticError(ValidationError):
    """A cross-slice diagnostic was requested on a single-slice partition."""


class OracleSizeError(ValidationError):
    """Exhaustive search refused: the instance exceeds the enumeration cap."""
