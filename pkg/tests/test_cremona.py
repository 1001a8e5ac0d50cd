"""Tests for quadratic transformations, standard forms and (-1)-classes."""

from __future__ import annotations

import numpy as np
import pytest

from specialsys.cremona import (
    CremonaStep,
    CremonaTrace,
    Peel,
    Permutation,
    Terminal,
    apply_cremona,
    enumerate_minus_one_classes,
    is_minus_one_class,
    negative_curves,
    to_standard_form,
)
from specialsys.exceptions import CremonaIndexError, ScopeError
from specialsys.lattice import (
    DivisorClass,
    arithmetic_genus,
    canonical_class,
    intersect,
    virtual_dim,
)

from .conftest import plane, random_classes, random_standard_classes


@pytest.mark.parametrize(
    ("cls", "slots", "result"),
    [
        (plane(1, 1, 1, 0), (0, 1, 2), plane(0, 0, 0, -1)),
        (plane(5, 3, 3, 3), (0, 1, 2), plane(1, -1, -1, -1)),
        (plane(4, 2, 2, 2, 2, 2), (0, 1, 2), plane(2, 0, 0, 0, 2, 2)),
        (plane(2, 1, 1, 1, 1, 1), (2, 3, 4), plane(1, 1, 1, 0, 0, 0)),
        (plane(1), (0, 1, 2), plane(2, 1, 1, 1)),
    ],
)
def test_apply_cremona(
    cls: DivisorClass, slots: tuple[int, int, int], result: DivisorClass
) -> None:
    """t = m_i + m_j + m_k - d comes off the degree and the three slots."""
    assert apply_cremona(cls, *slots) == result


@pytest.mark.parametrize("slots", [(0, 0, 1), (2, 1, 2), (-1, 0, 1)])
def test_apply_cremona_rejects_bad_slots(slots: tuple[int, int, int]) -> None:
    """Colliding or negative slots are rejected."""
    with pytest.raises(CremonaIndexError):
        apply_cremona(plane(3, 1, 1, 1), *slots)


def _invariance_failures(rng: np.random.Generator, count: int) -> list[str]:
    failures = []
    classes = random_classes(rng, 2 * count)
    for first, second in zip(classes[::2], classes[1::2], strict=True):
        slots = tuple(int(s) for s in rng.choice(6, size=3, replace=False))
        moved_first = apply_cremona(first, *slots)
        moved_second = apply_cremona(second, *slots)
        if intersect(moved_first, moved_second) != intersect(first, second):
            failures.append(f"pairing {first} {second} {slots}")
        if apply_cremona(moved_first, *slots) != first:
            failures.append(f"involution {first} {slots}")
        if virtual_dim(moved_first) != virtual_dim(first):
            failures.append(f"vdim {first} {slots}")
        if arithmetic_genus(moved_first) != arithmetic_genus(first):
            failures.append(f"genus {first} {slots}")
        k = canonical_class(6)
        if apply_cremona(k, *slots) != k:
            failures.append(f"canonical class {slots}")
    return failures


def test_cremona_preserves_invariants(rng: np.random.Generator) -> None:
    """Pairing, K, vdim and genus are preserved and the map is an involution."""
    assert _invariance_failures(rng, 500) == []


@pytest.mark.slow
def test_cremona_preserves_invariants_full(rng: np.random.Generator) -> None:
    """Same property on 10,000 random (class, step) pairs."""
    assert _invariance_failures(rng, 10_000) == []


def test_standard_form_four_with_five_doubles() -> None:
    """(4; 2^5) needs two steps and ends on a -2 entry."""
    reduced = to_standard_form(plane(4, 2, 2, 2, 2, 2))

    assert reduced.terminal is Terminal.NEGATIVE_MULTIPLICITY
    assert reduced.cls == plane(0, 0, 0, 0, 0, -2)
    assert reduced.slot == 4
    assert reduced.value == -2
    assert reduced.degrees == (4, 2, 0)
    assert len(reduced.trace.steps) == 2


def test_standard_form_double_line() -> None:
    """(2; 2, 2) reduces in one step to (0; 0, 0, -2)."""
    reduced = to_standard_form(plane(2, 2, 2))

    assert reduced.terminal is Terminal.NEGATIVE_MULTIPLICITY
    assert reduced.cls == plane(0, 0, 0, -2)
    assert reduced.slot == 2
    assert reduced.value == -2
    assert reduced.trace.pullback(DivisorClass.exceptional(2)).normalize() == plane(1, 1, 1)


def test_standard_form_peels_minus_one() -> None:
    """A -1 entry is peeled and the reduction goes on to standard form."""
    reduced = to_standard_form(plane(3, 2, 2))

    assert reduced.terminal is Terminal.STANDARD
    assert reduced.cls == plane(2, 1, 1, 0)
    assert reduced.trace.peels == (Peel(2, 1),)
    assert virtual_dim(reduced.cls) == 3
    assert reduced.value is None


def test_standard_form_without_peeling() -> None:
    """With peeling off, any negative entry stops the reduction."""
    reduced = to_standard_form(plane(5, 3, 3, 3), peel=False)
    assert reduced.terminal is Terminal.NEGATIVE_MULTIPLICITY
    assert reduced.cls == plane(1, -1, -1, -1)
    assert reduced.slot == 0

    peeled = to_standard_form(plane(5, 3, 3, 3))
    assert peeled.terminal is Terminal.STANDARD
    assert peeled.cls == plane(1, 0, 0, 0)


def test_standard_form_negative_degree() -> None:
    """A negative degree ends the reduction."""
    assert to_standard_form(plane(-1)).terminal is Terminal.NEGATIVE_DEGREE
    assert to_standard_form(plane(1, 1, 1, 1)).terminal is Terminal.NEGATIVE_DEGREE


def test_standard_form_is_idempotent() -> None:
    """A class already in standard form records no operations."""
    reduced = to_standard_form(plane(5, 2, 1, 1))
    assert reduced.terminal is Terminal.STANDARD
    assert reduced.trace.ops == ()
    assert reduced.degrees == (5,)


def test_reduction_properties(rng: np.random.Generator) -> None:
    """Degrees drop strictly; replay and invert match the reduction."""
    for cls in random_classes(rng, 300, bound=6):
        cls = DivisorClass(abs(cls.degree), tuple(abs(m) for m in cls.mults))
        reduced = to_standard_form(cls)
        degrees = reduced.degrees
        assert all(a > b for a, b in zip(degrees, degrees[1:], strict=False))
        assert reduced.trace.replay(cls).normalize() == reduced.cls.normalize()
        assert reduced.trace.invert(reduced.cls).normalize() == cls.normalize()


def test_trace_push_and_pullback_are_inverse() -> None:
    """Without peels, pullback undoes push."""
    trace = CremonaTrace((CremonaStep((0, 1, 2), 2), Permutation((3, 4, 0, 1, 2))))
    curve = plane(2, 1, 1, 1, 1, 1)
    assert trace.pullback(trace.push(curve)).normalize() == curve
    assert trace.prefix(1).ops == (CremonaStep((0, 1, 2), 2),)
    assert trace.then(trace).steps == (CremonaStep((0, 1, 2), 2),) * 2


def test_permutation_round_trip() -> None:
    """Permutation.invert undoes Permutation.apply."""
    permutation = Permutation((2, 0, 1))
    cls = plane(5, 1, 2, 3)
    assert permutation.apply(cls) == plane(5, 3, 1, 2)
    assert permutation.invert(permutation.apply(cls)) == cls


@pytest.mark.parametrize(
    "cls",
    [
        DivisorClass.exceptional(0),
        DivisorClass.exceptional(3, 5),
        plane(1, 1, 1),
        plane(2, 1, 1, 1, 1, 1),
        plane(3, 2, 1, 1, 1, 1, 1, 1),
        plane(6, 3, 2, 2, 2, 2, 2, 2, 2),
    ],
)
def test_is_minus_one_class(cls: DivisorClass) -> None:
    """Known (-1)-classes are recognised."""
    assert is_minus_one_class(cls)


@pytest.mark.parametrize(
    "cls",
    [
        plane(1, 1),
        plane(3, 1, 1, 1, 1, 1, 1, 1, 1),
        plane(0, 1),
        plane(1, 1, 1, 1),
    ],
)
def test_is_not_minus_one_class(cls: DivisorClass) -> None:
    """Classes failing the numerics are rejected."""
    assert not is_minus_one_class(cls)


@pytest.mark.parametrize(
    ("slots", "count"),
    [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)],
)
def test_minus_one_census(
    minus_one_classes: dict[int, tuple[DivisorClass, ...]], slots: int, count: int
) -> None:
    """Counts on 1..8 points match the del Pezzo lines."""
    found = minus_one_classes[slots]
    assert len(found) == count
    assert len(set(found)) == count
    for cls in found:
        assert intersect(cls, cls) == -1
        assert intersect(cls, canonical_class(slots)) == -1
        assert arithmetic_genus(cls) == 0


def test_enumeration_order() -> None:
    """Classes come sorted by degree, then multiplicities."""
    found = enumerate_minus_one_classes(3, 2)
    assert found == (
        plane(0, -1, 0, 0),
        plane(0, 0, -1, 0),
        plane(0, 0, 0, -1),
        plane(1, 0, 1, 1),
        plane(1, 1, 0, 1),
        plane(1, 1, 1, 0),
    )


@pytest.mark.parametrize("slots", [0, 11])
def test_enumeration_scope(slots: int) -> None:
    """Slot counts outside 1..10 are out of scope."""
    with pytest.raises(ScopeError):
        enumerate_minus_one_classes(slots, 3)


def _standard_meets_nonnegatively(
    rng: np.random.Generator,
    minus_one_classes: dict[int, tuple[DivisorClass, ...]],
    count: int,
) -> list[tuple[DivisorClass, DivisorClass]]:
    failures = []
    for cls in random_standard_classes(rng, count):
        for slots, curves in minus_one_classes.items():
            trimmed = DivisorClass(cls.degree, cls.mults[:slots])
            failures += [(trimmed, c) for c in curves if intersect(trimmed, c) < 0]
    return failures


def test_standard_classes_meet_minus_one_curves_nonnegatively(
    rng: np.random.Generator, minus_one_classes: dict[int, tuple[DivisorClass, ...]]
) -> None:
    """A class in standard form meets every (-1)-class nonnegatively."""
    assert _standard_meets_nonnegatively(rng, minus_one_classes, 100) == []


@pytest.mark.slow
def test_standard_classes_meet_minus_one_curves_nonnegatively_full(
    rng: np.random.Generator, minus_one_classes: dict[int, tuple[DivisorClass, ...]]
) -> None:
    """Same property on 1,000 random standard-form classes."""
    assert _standard_meets_nonnegatively(rng, minus_one_classes, 1000) == []


def test_step_changes_pairing_linearly(
    rng: np.random.Generator, minus_one_classes: dict[int, tuple[DivisorClass, ...]]
) -> None:
    """L.s(C) = L.C - t(d - m_i - m_j - m_k) for a step s at C's largest slots."""
    for cls in random_standard_classes(rng, 50):
        for curve in minus_one_classes[8]:
            if curve.degree == 0:
                continue
            slots = sorted(range(8), key=lambda s: -curve.mults[s])[:3]
            t = sum(curve.mults[s] for s in slots) - curve.degree
            moved = apply_cremona(curve, *slots)
            drop = t * (cls.degree - sum(cls.mults[s] for s in slots))
            assert intersect(cls, moved) == intersect(cls, curve) - drop


def test_negative_curves() -> None:
    """The conic through five points is the only negative curve of (4; 2^5)."""
    assert negative_curves(plane(4, 2, 2, 2, 2, 2)) == [plane(2, 1, 1, 1, 1, 1)]
    assert negative_curves(plane(3, 1, 1)) == []
