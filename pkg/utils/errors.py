"""
errors.py

Exception hierarchy shared by every engine module.
The CLI handlers map these onto exit codes; nothing below the CLI swallows them.
"""

from typing import Any, Optional


class VexGvdError(Exception):
    """Base class for every error raised by the engines."""


class InvalidPermutationError(VexGvdError, ValueError):
    """One-line notation that is not a bijection on {1, ..., n}."""


class PreconditionError(VexGvdError, ValueError):
    """An operation was called outside its domain (non-vexillary input, inaccessible box, ...)."""


class ParseError(VexGvdError, ValueError):
    """Text or JSON input that does not follow one of the documented grammars."""

    def __init__(self, message: str, token: Optional[str] = None):
        self.token = token
        if token is not None:
            message = f"{message} (at {token!r})"
        super().__init__(message)


class BudgetExhausted(VexGvdError):
    """A configured resource cap was hit before the computation finished."""

    def __init__(self, resource: str, limit: int):
        self.resource = resource
        self.limit = limit
        super().__init__(f"budget exhausted: {resource} exceeded limit {limit}")


class VerificationFailure(VexGvdError, AssertionError):
    """An asserted structural property did not hold."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)
