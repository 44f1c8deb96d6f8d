"""Error types shared by every stage of the toolchain.

Each error carries a short machine-readable ``code`` (for example
``TypeMismatch`` or ``RequireUnmet``) and an optional source position, and
renders as ``file:line:col: code: message``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Pos:
    file: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


class CaspError(Exception):
    """Base class. ``code`` names the failure, ``pos`` locates it when known."""

    default_code = "Error"

    def __init__(self, message: str, code: str | None = None, pos: Pos | None = None):
        super().__init__(message)
        self.message = message
        self.code = code or self.default_code
        self.pos = pos

    def diagnostic(self) -> str:
        where = str(self.pos) if self.pos else "<input>:0:0"
        return f"{where}: {self.code}: {self.message}"

    def __str__(self) -> str:
        return self.diagnostic()


class ParseError(CaspError):
    default_code = "ParseError"


class TypeCheckError(CaspError):
    default_code = "TypeMismatch"


class EvalError(CaspError):
    """Raised when a declaration evaluates to failure, or extraction fails."""

    default_code = "EvaluationFailed"


class StateError(CaspError):
    """A concrete machine state does not match the machine's declarations."""

    default_code = "InvalidState"


class ConfigError(CaspError):
    default_code = "ConfigError"


class LowerError(CaspError):
    """Lowering failure; ``origin`` says which input declaration caused it."""

    default_code = "LoweringError"

    def __init__(self, message: str, code: str | None = None, pos: Pos | None = None,
                 origin: str | None = None):
        if origin:
            message = f"{message} (from {origin})"
        super().__init__(message, code, pos)
        self.origin = origin
