"""Error types for orbitspace.

Every error carries a stable ``code`` used in reports and an ``exit_code``
used by the command line.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceLocation:
    """A 1-based position in a description file."""

    line: int
    column: int
    end_line: Optional[int] = None
    end_column: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class OrbitSpaceError(Exception):
    """Base class for all orbitspace errors."""

    code = "E_INTERNAL"
    exit_code = 5

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"code": self.code, "error": self.message}


class ParseError(OrbitSpaceError):
    """Syntax error in a description file."""

    code = "E_PARSE"
    exit_code = 2

    def __init__(self, message: str, location: Optional[SourceLocation] = None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location

    def to_dict(self) -> dict:
        result = super().to_dict()
        if self.location is not None:
            result["line"] = self.location.line
            result["column"] = self.location.column
        return result


class IllegalWeights(OrbitSpaceError):
    code = "E_LEGALITY"
    exit_code = 3


class EmptyOrbitSpace(OrbitSpaceError):
    code = "E_EMPTY"
    exit_code = 3


class IncompatibleWeights(OrbitSpaceError):
    """Two adjacent plumbing blocks disagree on their shared data."""

    code = "E_INCOMPATIBLE"
    exit_code = 3


class InvariantRange(OrbitSpaceError):
    code = "E_INVARIANT_RANGE"
    exit_code = 3


class InvalidSeifertInvariant(InvariantRange, ValueError):
    """A pair (alpha, beta) that is not a Seifert invariant."""


class UnsupportedConfiguration(OrbitSpaceError):
    code = "E_UNSUPPORTED"
    exit_code = 4


class NotUnimodular(OrbitSpaceError):
    code = "E_NOT_UNIMODULAR"
    exit_code = 4


class NoSuchSum(OrbitSpaceError):
    """Even form with unequal signature, not a sum of S2xS2 copies."""

    code = "E_NO_SUCH_SUM"
    exit_code = 4


class NoSuchCase(OrbitSpaceError):
    code = "E_NO_SUCH_CASE"
    exit_code = 4


class FixedPointFree(OrbitSpaceError):
    code = "E_FIXED_POINT_FREE"
    exit_code = 4


class StrictModeViolation(OrbitSpaceError):
    code = "E_STRICT"
    exit_code = 4


class InternalInvariantError(OrbitSpaceError):
    code = "E_INTERNAL"
    exit_code = 5
