"""Quadratic Cremona transformations, standard forms and (-1)-classes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from functools import lru_cache

from sympy.utilities.iterables import multiset_permutations

from .const import MAX_ENUM_SLOTS, MIN_CREMONA_SLOTS
from .exceptions import CremonaIndexError, ScopeError
from .lattice import DivisorClass, canonical_class, intersect

_LOGGER = logging.getLogger(__name__)


class Terminal(StrEnum):
    """How a reduction to standard form stopped."""

    STANDARD = "standard"
    NEGATIVE_DEGREE = "negative_degree"
    NEGATIVE_MULTIPLICITY = "negative_multiplicity"


def apply_cremona(cls: DivisorClass, i: int, j: int, k: int) -> DivisorClass:
    """Apply the quadratic transformation based at slots i, j, k (0-based).

    With t = m_i + m_j + m_k - d the new degree is d - t and each of the three
    multiplicities drops by t; other slots are untouched.
    """
    if len({i, j, k}) != 3:
        raise CremonaIndexError(f"Cremona slots must be distinct, got ({i}, {j}, {k})")
    if min(i, j, k) < 0:
        raise CremonaIndexError(f"Cremona slots must be nonnegative, got ({i}, {j}, {k})")
    padded = cls.padded(max(i, j, k) + 1)
    mults = list(padded.mults)
    t = mults[i] + mults[j] + mults[k] - padded.degree
    for slot in (i, j, k):
        mults[slot] -= t
    return DivisorClass(padded.degree - t, tuple(mults))


@dataclass(frozen=True, slots=True)
class CremonaStep:
    """One quadratic transformation and its t at application time."""

    slots: tuple[int, int, int]
    t: int

    def apply(self, cls: DivisorClass) -> DivisorClass:
        """Apply the step; it is an involution."""
        return apply_cremona(cls, *self.slots)


@dataclass(frozen=True, slots=True)
class Permutation:
    """Slot reordering: new slot i holds old slot ``order[i]``."""

    order: tuple[int, ...]

    def apply(self, cls: DivisorClass) -> DivisorClass:
        """Reorder the slots of ``cls``."""
        mults = cls.padded(len(self.order)).mults
        head = tuple(mults[source] for source in self.order)
        return DivisorClass(cls.degree, head + mults[len(self.order) :])

    def invert(self, cls: DivisorClass) -> DivisorClass:
        """Undo the reordering."""
        mults = list(cls.padded(len(self.order)).mults)
        restored = list(mults)
        for target, source in enumerate(self.order):
            restored[source] = mults[target]
        return DivisorClass(cls.degree, tuple(restored))


@dataclass(frozen=True, slots=True)
class Peel:
    """Removal of ``amount`` copies of the exceptional class at ``slot``."""

    slot: int
    amount: int

    def apply(self, cls: DivisorClass) -> DivisorClass:
        """Return cls - amount*e_slot."""
        return cls.with_mult(self.slot, cls.mult(self.slot) + self.amount)

    def invert(self, cls: DivisorClass) -> DivisorClass:
        """Return cls + amount*e_slot."""
        return cls.with_mult(self.slot, cls.mult(self.slot) - self.amount)


TraceOp = CremonaStep | Permutation | Peel


@dataclass(frozen=True, slots=True)
class CremonaTrace:
    """Ordered log of the operations taking a class to its reduced form."""

    ops: tuple[TraceOp, ...] = ()

    @property
    def steps(self) -> tuple[CremonaStep, ...]:
        """Cremona steps in order."""
        return tuple(op for op in self.ops if isinstance(op, CremonaStep))

    @property
    def permutations(self) -> tuple[Permutation, ...]:
        """Sorting permutations in order."""
        return tuple(op for op in self.ops if isinstance(op, Permutation))

    @property
    def peels(self) -> tuple[Peel, ...]:
        """Peeled exceptional classes in order."""
        return tuple(op for op in self.ops if isinstance(op, Peel))

    def then(self, other: CremonaTrace) -> CremonaTrace:
        """Concatenate two traces."""
        return CremonaTrace(self.ops + other.ops)

    def prefix(self, length: int) -> CremonaTrace:
        """Return the trace of the first ``length`` operations."""
        return CremonaTrace(self.ops[:length])

    def replay(self, cls: DivisorClass) -> DivisorClass:
        """Run every operation forward on the input class."""
        for op in self.ops:
            cls = op.apply(cls)
        return cls

    def invert(self, cls: DivisorClass) -> DivisorClass:
        """Run every operation backward, undoing ``replay``."""
        for op in reversed(self.ops):
            cls = op.apply(cls) if isinstance(op, CremonaStep) else op.invert(cls)
        return cls

    def push(self, cls: DivisorClass) -> DivisorClass:
        """Carry a curve class from the input frame to the output frame."""
        for op in self.ops:
            if not isinstance(op, Peel):
                cls = op.apply(cls)
        return cls

    def pullback(self, cls: DivisorClass) -> DivisorClass:
        """Carry a curve class from the output frame back to input slot labels."""
        for op in reversed(self.ops):
            if isinstance(op, CremonaStep):
                cls = op.apply(cls)
            elif isinstance(op, Permutation):
                cls = op.invert(cls)
        return cls


@dataclass(frozen=True, slots=True)
class ReducedForm:
    """Result of ``to_standard_form``."""

    cls: DivisorClass
    trace: CremonaTrace
    terminal: Terminal
    slot: int | None = None
    degrees: tuple[int, ...] = ()

    @property
    def value(self) -> int | None:
        """Offending multiplicity for a NegativeMultiplicity terminal."""
        if self.slot is None:
            return None
        return self.cls.mults[self.slot]


def _sorting_permutation(cls: DivisorClass) -> Permutation | None:
    order = tuple(sorted(range(cls.slots), key=lambda s: -cls.mults[s]))
    if order == tuple(range(cls.slots)):
        return None
    return Permutation(order)


def to_standard_form(cls: DivisorClass, peel: bool = True) -> ReducedForm:
    """Reduce a class by sorting and quadratic transformations.

    Each pass sorts multiplicities descending (ties keep the lowest slot first),
    then stops on a negative multiplicity, a negative degree, or standard form
    (d >= m_1 + m_2 + m_3); otherwise it applies the transformation at the three
    largest slots, which strictly lowers the degree. With ``peel`` a minimum of
    -1 removes every -1 exceptional class and the loop continues.
    """
    current = cls.padded(MIN_CREMONA_SLOTS)
    ops: list[TraceOp] = []
    degrees = [current.degree]

    def done(terminal: Terminal, slot: int | None = None) -> ReducedForm:
        return ReducedForm(current, CremonaTrace(tuple(ops)), terminal, slot, tuple(degrees))

    while True:
        permutation = _sorting_permutation(current)
        if permutation is not None:
            ops.append(permutation)
            current = permutation.apply(current)

        lowest = min(current.mults)
        if lowest < 0:
            if peel and lowest == -1:
                for slot, value in enumerate(current.mults):
                    if value == -1:
                        peel_op = Peel(slot, 1)
                        ops.append(peel_op)
                        current = peel_op.apply(current)
                        _LOGGER.debug("Peeled e_%d from %s", slot + 1, current)
                continue
            return done(Terminal.NEGATIVE_MULTIPLICITY, current.mults.index(lowest))

        if current.degree < 0:
            return done(Terminal.NEGATIVE_DEGREE)

        first, second, third = current.mults[:3]
        if current.degree >= first + second + third:
            return done(Terminal.STANDARD)

        step = CremonaStep((0, 1, 2), first + second + third - current.degree)
        ops.append(step)
        current = step.apply(current)
        degrees.append(current.degree)
        _LOGGER.debug("Cremona step with t=%d gives %s", step.t, current)


def is_minus_one_class(cls: DivisorClass) -> bool:
    """Return True iff ``cls`` lies in the orbit of an exceptional class.

    The numerical conditions C^2 = -1 and C.K = -1 are checked first, then the
    class must reduce, without peeling, to a single exceptional class.
    """
    if intersect(cls, cls) != -1 or intersect(cls, canonical_class(cls.slots)) != -1:
        return False
    reduced = to_standard_form(cls, peel=False)
    if reduced.terminal is not Terminal.NEGATIVE_MULTIPLICITY:
        return False
    final = reduced.cls
    return final.degree == 0 and sorted(final.mults) == [-1] + [0] * (final.slots - 1)


def _shapes(degree: int, slots: int) -> list[tuple[int, ...]]:
    """Descending multiplicity vectors solving sum = 3d - 1 and sum of squares = d^2 + 1."""
    found: list[tuple[int, ...]] = []

    def place(prefix: tuple[int, ...], left: int, total: int, squares: int, cap: int) -> None:
        if left == 0:
            if total == 0 and squares == 0:
                found.append(prefix)
            return
        # x <= x^2 <= cap*x termwise, and Cauchy-Schwarz across the remaining slots
        if total < 0 or total > squares or squares > cap * total or total * total > left * squares:
            return
        for value in range(min(cap, total), -1, -1):
            place((*prefix, value), left - 1, total - value, squares - value * value, value)

    place((), slots, 3 * degree - 1, degree * degree + 1, degree)
    return found


@lru_cache(maxsize=64)
def enumerate_minus_one_classes(slots: int, max_degree: int) -> tuple[DivisorClass, ...]:
    """Return every (-1)-class on ``slots`` points with degree at most ``max_degree``."""
    if not 1 <= slots <= MAX_ENUM_SLOTS:
        raise ScopeError(f"Enumeration supports 1 to {MAX_ENUM_SLOTS} slots, got {slots}")
    found = [DivisorClass.exceptional(index, slots) for index in range(slots)]
    for degree in range(1, max_degree + 1):
        for shape in _shapes(degree, slots):
            for mults in multiset_permutations(list(shape)):
                candidate = DivisorClass(degree, tuple(mults))
                if is_minus_one_class(candidate):
                    found.append(candidate)
    _LOGGER.debug(
        "Found %d (-1)-classes on %d slots up to degree %d", len(found), slots, max_degree
    )
    return tuple(sorted(found, key=lambda c: (c.degree, c.mults)))


def negative_curves(cls: DivisorClass, max_degree: int | None = None) -> list[DivisorClass]:
    """Return enumerated (-1)-classes C with L.C < 0 on the slots of ``cls``.

    The default degree bound is 2*d.
    """
    bound = 2 * max(cls.degree, 0) if max_degree is None else max_degree
    slots = max(cls.normalize().slots, 1)
    return [c for c in enumerate_minus_one_classes(slots, bound) if intersect(cls, c) < 0]
