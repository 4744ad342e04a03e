"""Exception hierarchy shared by the lattice, algebra and engine layers."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from src.diagnostics.verdict import Verdict


class AmalgamError(ValueError):
    """Base class for every error raised by this package."""


class StructuralError(AmalgamError):
    """A value is malformed (overlapping blocks, gaps, bad words)."""


class RangeError(AmalgamError):
    """An integer parameter is outside its allowed range."""


class DimensionError(AmalgamError):
    """Mismatched B dimensions, arities or ground-set sizes."""


class DomainError(AmalgamError):
    """An operation received a crossing partition where NC was required."""


class OrderError(AmalgamError):
    """Two partitions are not comparable in the refinement order."""


class ArgumentError(AmalgamError):
    """Invalid variable index, grouping or option."""


class TruncationError(AmalgamError):
    """A spec is truncated below the order an operation needs."""

    def __init__(self, message: str, required: int, available: int):
        super().__init__(message)
        self.required = required
        self.available = available

    def __reduce__(self):
        return type(self), (self.args[0], self.required, self.available)


class PreconditionError(AmalgamError):
    """An input failed a diagnostic that the operation depends on."""

    def __init__(self, message: str, verdict: Optional["Verdict"] = None):
        super().__init__(message)
        self.verdict = verdict

    def __reduce__(self):
        return type(self), (self.args[0], self.verdict)


class SpecFormatError(AmalgamError):
    """A spec file failed to parse or validate."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.message = message
        self.location = location

    def __reduce__(self):
        return type(self), (self.message, self.location)
