"""Divisor-class arithmetic on blow-ups of the plane at general points.

A class is stored as ``(d; m_1, ..., m_r)`` and stands for ``d*h - sum(m_i * e_i)``.
Entries may be negative; nothing here checks effectivity.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import zip_longest

from .const import INT64_MAX, INT64_MIN
from .exceptions import LatticeOverflowError


@dataclass(frozen=True, slots=True)
class DivisorClass:
    """Integer vector (d; m_1, ..., m_r) on the blow-up of the plane."""

    degree: int
    mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Coerce any iterable of multiplicities to a tuple of ints."""
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @classmethod
    def line(cls, slots: int = 0) -> DivisorClass:
        """Return the pull-back h of a general line."""
        return cls(1, (0,) * slots)

    @classmethod
    def exceptional(cls, index: int, slots: int | None = None) -> DivisorClass:
        """Return the exceptional class e_index (0-based), padded to ``slots``."""
        width = max(index + 1, slots or 0)
        return cls(0, tuple(-1 if s == index else 0 for s in range(width)))

    @property
    def slots(self) -> int:
        """Number of multiplicity slots, trailing zeros included."""
        return len(self.mults)

    def mult(self, index: int) -> int:
        """Return m_index, zero beyond the stored slots."""
        return self.mults[index] if index < len(self.mults) else 0

    def padded(self, slots: int) -> DivisorClass:
        """Zero-extend to at least ``slots`` multiplicity slots."""
        if slots <= len(self.mults):
            return self
        return DivisorClass(self.degree, self.mults + (0,) * (slots - len(self.mults)))

    def extend(self, values: Iterable[int]) -> DivisorClass:
        """Append further multiplicity slots."""
        return DivisorClass(self.degree, self.mults + tuple(values))

    def normalize(self) -> DivisorClass:
        """Strip trailing zero multiplicities."""
        mults = list(self.mults)
        while mults and mults[-1] == 0:
            mults.pop()
        return DivisorClass(self.degree, tuple(mults))

    def with_mult(self, index: int, value: int) -> DivisorClass:
        """Return a copy with m_index replaced."""
        mults = list(self.padded(index + 1).mults)
        mults[index] = value
        return DivisorClass(self.degree, tuple(mults))

    def is_zero(self) -> bool:
        """Return True for the zero class."""
        return self.degree == 0 and not any(self.mults)

    def __add__(self, other: DivisorClass) -> DivisorClass:
        """Add two classes slot by slot."""
        return DivisorClass(
            self.degree + other.degree,
            tuple(a + b for a, b in zip_longest(self.mults, other.mults, fillvalue=0)),
        )

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        """Subtract two classes slot by slot."""
        return self + (-1) * other

    def __mul__(self, scalar: int) -> DivisorClass:
        """Scale a class by an integer."""
        return DivisorClass(scalar * self.degree, tuple(scalar * m for m in self.mults))

    __rmul__ = __mul__

    def __neg__(self) -> DivisorClass:
        """Negate a class."""
        return (-1) * self

    def __str__(self) -> str:
        """Return the raw slot-labelled form, e.g. ``(4; 2, 2, 0)``."""
        if not self.mults:
            return f"({self.degree};)"
        return f"({self.degree}; {', '.join(str(m) for m in self.mults)})"


def _checked(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise LatticeOverflowError(f"Intersection number {value} exceeds the 64-bit range")
    return value


def intersect(first: DivisorClass, second: DivisorClass) -> int:
    """Return d_A*d_B - sum(m_A,i * m_B,i); the shorter class is zero-padded."""
    total = first.degree * second.degree
    total -= sum(a * b for a, b in zip(first.mults, second.mults, strict=False))
    return _checked(total)


def canonical_class(slots: int) -> DivisorClass:
    """Return K = -3h + sum(e_i) on the blow-up at ``slots`` points."""
    return DivisorClass(-3, (-1,) * slots)


def self_intersection(cls: DivisorClass) -> int:
    """Return L^2."""
    return intersect(cls, cls)


def canonical_degree(cls: DivisorClass) -> int:
    """Return L.K."""
    return intersect(cls, canonical_class(cls.slots))


def virtual_dim(cls: DivisorClass, chi: int = 1) -> int:
    """Return the projective virtual dimension (L^2 - L.K)/2 + chi - 1.

    On the plane (chi = 1) this is d(d+3)/2 - sum(m_i(m_i+1)/2).
    """
    return (self_intersection(cls) - canonical_degree(cls)) // 2 + chi - 1


def expected_dim(cls: DivisorClass, chi: int = 1) -> int:
    """Return max(vdim, -1)."""
    return max(virtual_dim(cls, chi), -1)


def arithmetic_genus(cls: DivisorClass) -> int:
    """Return p_a = (L^2 + L.K)/2 + 1."""
    return (self_intersection(cls) + canonical_degree(cls)) // 2 + 1
