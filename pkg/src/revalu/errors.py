"""Exception types shared across the package."""
from __future__ import annotations


class StructuralError(ValueError):
    """A circuit, gate or state is malformed (bad line index, geometry, width)."""


class ParseError(StructuralError):
    """An RNL document could not be parsed.

    ``lineno`` is the 1-based line of the offending statement.
    """

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        self.message = message
        super().__init__(f"line {lineno}: {message}")


class BudgetExceeded(ValueError):
    """An exhaustive sweep was requested beyond the configured limit."""
