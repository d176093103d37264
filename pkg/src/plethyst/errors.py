"""Exception types shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EngineError):
    """A value is outside an operation's domain (zero denominator, bad index, ...)."""


class TruncationError(EngineError):
    """A series operation was asked for data beyond what a truncation can supply."""


class ParseError(EngineError):
    """Source text could not be parsed; carries the offending span."""

    def __init__(self, message: str, start: int, end: int) -> None:
        super().__init__(message)
        self.start = start
        self.end = end

    def pretty(self, text: str) -> str:
        line = text.replace("\n", " ")
        caret = " " * self.start + "^" * max(1, self.end - self.start)
        return f"{self.args[0]}\n  {line}\n  {caret}"


class EvalError(EngineError):
    """Evaluation of a parsed expression failed; carries the offending span."""

    def __init__(self, message: str, start: int = 0, end: int = 0) -> None:
        super().__init__(message)
        self.start = start
        self.end = end
