"""Exception hierarchy shared by the library and the CLI."""

from typing import Any, Optional


class BidirectedError(Exception):
    """Base class for all bidimenger errors."""


class StructureError(BidirectedError, ValueError):
    """Graph structure is invalid: unknown ids, loops, duplicate ids or signatures."""


class ParseError(StructureError):
    """A bgf document could not be parsed."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ContractError(BidirectedError, ValueError):
    """Caller input violates an operation's precondition."""


class PreconditionError(BidirectedError):
    """A theorem precondition fails; ``witness`` is the walk proving it."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class BoundExceededError(BidirectedError):
    """An exhaustive oracle was asked to search beyond its configured bound."""


class InternalError(BidirectedError, AssertionError):
    """An invariant that the construction guarantees did not hold."""
