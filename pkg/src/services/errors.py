"""Exception hierarchy shared by the engine, the CLI, and the HTTP gateway."""

from __future__ import annotations

from typing import Optional


class GolodForgeError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 1


class JobParseError(GolodForgeError):
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.reason = message
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{location}{message}")


class PreconditionError(GolodForgeError):
    exit_code = 3


class StrandBoundExceeded(PreconditionError):
    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(f"internal degree {degree} exceeds the strand bound {bound}")


class RingMismatchError(PreconditionError):
    pass


class EngineInvariantError(GolodForgeError):
    exit_code = 4


class LiftError(EngineInvariantError):
    """Raised when a lifting target is not a boundary."""
