"""Structured errors shared by all engines and the CLI.

Every error carries a short machine-readable code, a human message and an
optional character span ``(start, end)`` into whatever input string produced
it, so batch runs can report bad lines without aborting.
"""

from __future__ import annotations


class LenkrullError(Exception):
    """Base class; code + message + optional input span."""

    code = "error"

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.span = span


class ParseError(LenkrullError):
    code = "parse"


class UnsupportedError(LenkrullError):
    """Ring/ideal/module outside the supported family; message names the restriction."""

    code = "unsupported"


class FactorBoundError(LenkrullError):
    """Trial division gave up: a cofactor exceeds the square of the bound."""

    code = "factor-bound"


class SizeBoundError(LenkrullError):
    """A brute-force enumeration was asked to exceed its hard size bound."""

    code = "size-bound"
