"""Exception hierarchy for flagforge.

Verification outcomes are reports, not exceptions. The classes below cover
malformed input and violated preconditions only.
"""

from __future__ import annotations

from typing import Any


class FlagforgeError(Exception):
    """Base class for all flagforge errors."""


class GraphParseError(FlagforgeError, ValueError):
    """A graph or flag string could not be parsed."""

    def __init__(self, message: str, token: str = "") -> None:
        super().__init__(message)
        self.token = token


class DomainError(FlagforgeError, ValueError):
    """An operation was called outside its supported domain."""


class CertificateFormatError(FlagforgeError):
    """A certificate file violates the schema or an invariant."""

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class RoundingError(FlagforgeError):
    """A floating solution could not be turned into an exact PSD block."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics or {}
