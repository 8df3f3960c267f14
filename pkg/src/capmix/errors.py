"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CapmixError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(CapmixError, ValueError):
    """Two objects with incompatible welfare-dimension counts were combined."""

    def __init__(self, expected: int, got: int, context: str = "") -> None:
        where = f" in {context}" if context else ""
        super().__init__(f"dimension mismatch{where}: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class InvalidProbabilityError(CapmixError, ValueError):
    """A probability vector violates non-negativity or does not sum to one."""


class CapacityError(CapmixError, RuntimeError):
    """An enumeration would exceed the configured cap.

    Raised instead of silently truncating: results are exact or absent.
    """

    def __init__(self, required: int, cap: int, what: str) -> None:
        super().__init__(
            f"{what} needs {required} evaluations, exceeding the cap of {cap}; "
            f"raise the cap explicitly to proceed"
        )
        self.required = required
        self.cap = cap


class PreconditionError(CapmixError, ValueError):
    """An operation's stated precondition does not hold for the given input."""


class ScenarioFormatError(CapmixError, ValueError):
    """A scenario document is malformed.  `location` points at the offending field."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
