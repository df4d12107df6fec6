from __future__ import annotations

from typing import Optional


class WeakIndError(Exception):
    """Base class for every error raised by the weakind services."""


class TermError(WeakIndError):
    pass


class TermSyntaxError(WeakIndError):
    """Raised when text does not conform to a grammar.

    `position` is the 1-based column of the offending character, or None
    when the input ended early.
    """

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (column {position})"
        super().__init__(message)


class UnboundVariableError(WeakIndError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable: {name}")


class CrossModelError(WeakIndError):
    pass


class ElementSyntaxError(WeakIndError):
    pass


class WitnessMissingError(WeakIndError):
    pass


class SchemeError(WeakIndError):
    pass


class BracketPreconditionError(WeakIndError):
    pass


class PuiseuxError(WeakIndError):
    pass


class TruncationError(PuiseuxError):
    """The truncated expansion does not determine the floor of the constant tail."""
