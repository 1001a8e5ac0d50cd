"""Exceptions raised by specialsys."""

from __future__ import annotations


class SpecialSysError(Exception):
    """Base class for all specialsys errors."""


class LatticeOverflowError(SpecialSysError):
    """An intersection number left the signed 64-bit range."""


class CremonaIndexError(SpecialSysError):
    """Cremona slots collide or are negative."""


class ScopeError(SpecialSysError):
    """The system lies outside the range the symbolic classification covers."""


class UnsupportedSurfaceError(SpecialSysError):
    """No classification rule exists for the requested surface."""


class MalformedClassError(SpecialSysError):
    """A divisor class or system description is not well formed."""


class ModulusError(SpecialSysError):
    """The oracle field modulus is unusable for the requested degree."""


class PreconditionError(SpecialSysError):
    """An operation was called outside its documented preconditions."""


class NotationError(SpecialSysError):
    """System notation text could not be parsed."""

    def __init__(self, message: str, position: int) -> None:
        """Initialize with the 0-based character position of the problem."""
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ScanFailedError(SpecialSysError):
    """A worker of a defectivity scan failed."""


class SchemaError(SpecialSysError):
    """Runtime options or an output document failed schema validation."""
