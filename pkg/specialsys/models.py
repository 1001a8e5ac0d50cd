"""Surface profiles and system descriptions shared across specialsys."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

from .exceptions import MalformedClassError
from .lattice import DivisorClass


class SurfaceKind(StrEnum):
    """Surfaces the classification knows about."""

    RATIONAL = "p2"
    K3 = "k3"
    ABELIAN = "abelian"
    ENRIQUES = "enriques"
    HYPERELLIPTIC = "hyperelliptic"


# (p_g, q) per kind; chi = 1 - q + p_g
_INVARIANTS: dict[SurfaceKind, tuple[int, int]] = {
    SurfaceKind.RATIONAL: (0, 0),
    SurfaceKind.K3: (1, 0),
    SurfaceKind.ABELIAN: (1, 2),
    SurfaceKind.ENRIQUES: (0, 0),
    SurfaceKind.HYPERELLIPTIC: (0, 1),
}


@dataclass(frozen=True, slots=True)
class SurfaceProfile:
    """Which surface a system lives on, with its numerical invariants."""

    kind: SurfaceKind
    chi: int = field(init=False)
    p_g: int = field(init=False)
    q: int = field(init=False)

    def __post_init__(self) -> None:
        """Fix chi, p_g and q from the kind."""
        kind = SurfaceKind(self.kind)
        p_g, q = _INVARIANTS[kind]
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p_g", p_g)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "chi", 1 - q + p_g)

    @classmethod
    def of(cls, value: str | SurfaceKind) -> SurfaceProfile:
        """Build a profile from a kind or its CLI tag."""
        try:
            return cls(SurfaceKind(value))
        except ValueError as err:
            raise MalformedClassError(f"Unknown surface {value!r}") from err

    @property
    def is_rational(self) -> bool:
        """Return True for the blown-up plane."""
        return self.kind is SurfaceKind.RATIONAL

    @property
    def is_kodaira_zero(self) -> bool:
        """Return True for K3, abelian and Enriques surfaces."""
        return self.kind in (SurfaceKind.K3, SurfaceKind.ABELIAN, SurfaceKind.ENRIQUES)


PLANE = SurfaceProfile(SurfaceKind.RATIONAL)


@dataclass(frozen=True, slots=True)
class PolarizedClass:
    """Abstract class c*H on a Kodaira-0 surface, known only through H^2."""

    multiple: int
    h_squared: int

    def validate(self) -> None:
        """Raise MalformedClassError unless c >= 1 and H^2 is positive and even."""
        if self.multiple < 1:
            raise MalformedClassError(f"Multiple of H must be positive, got {self.multiple}")
        if self.h_squared <= 0 or self.h_squared % 2:
            raise MalformedClassError(
                f"H^2 must be positive and even on this surface, got {self.h_squared}"
            )

    @property
    def self_intersection(self) -> int:
        """Return (cH)^2."""
        return self.multiple * self.multiple * self.h_squared


@dataclass(frozen=True, slots=True)
class SystemSpec:
    """A surface, a base class and a count of additional general double points."""

    surface: SurfaceProfile
    base: DivisorClass | PolarizedClass
    doubles: int = 0

    def __post_init__(self) -> None:
        """Reject a negative double-point count."""
        if self.doubles < 0:
            raise MalformedClassError(f"Double-point count must be >= 0, got {self.doubles}")

    @classmethod
    def plane(cls, degree: int, mults: tuple[int, ...] = (), doubles: int = 0) -> SystemSpec:
        """Build a system on the blown-up plane."""
        return cls(PLANE, DivisorClass(degree, mults), doubles)

    @property
    def free_slots(self) -> int:
        """Number of free multiplicity slots in the base (trailing zeros ignored)."""
        if isinstance(self.base, PolarizedClass):
            return 0
        return self.base.normalize().slots

    @property
    def double_slots(self) -> range:
        """Slots of the full class holding the double points."""
        start = self.base.slots if isinstance(self.base, DivisorClass) else 0
        return range(start, start + self.doubles)

    def full_class(self) -> DivisorClass:
        """Return the base extended by one entry 2 per double point."""
        if not isinstance(self.base, DivisorClass):
            raise MalformedClassError("Abstract classes have no plane representation")
        return self.base.extend((2,) * self.doubles)
