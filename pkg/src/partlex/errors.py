"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage errors -> 2, DataError -> 3,
OracleError -> 4.
"""


class PartlexError(Exception):
    """Base class for all package errors."""


class ParseError(PartlexError):
    """Malformed s-expression source. Carries a character position."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class EvalError(PartlexError):
    """A program could not be evaluated (bad counts, out-of-bounds, ...)."""


class DataError(PartlexError):
    """Invalid or inconsistent input data (corpora, descriptions, configs)."""


class OracleError(PartlexError):
    """An internal consistency check failed (e.g. a rewrite changed semantics).

    This must never trigger in a passing build; it signals a bug rather than
    bad input.
    """
