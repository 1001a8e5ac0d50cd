"""Parse and render the ``"d; m^k, ..."`` system notation."""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable

from .cremona import CremonaStep, CremonaTrace, Peel, Permutation
from .exceptions import MalformedClassError, NotationError
from .lattice import DivisorClass
from .models import PolarizedClass, SurfaceProfile, SystemSpec

_INTEGER = re.compile(r"\s*(-?\d+)\s*")
_ATOM = re.compile(r"\s*(-?\d+)\s*(?:\^\s*(-?\d+)\s*)?")


def _scan(text: str) -> tuple[int, list[int]]:
    head = _INTEGER.match(text)
    if head is None:
        raise NotationError("Expected an integer degree", 0)
    degree = int(head.group(1))
    pos = head.end()
    if pos >= len(text) or text[pos] != ";":
        raise NotationError("Expected ';' after the degree", pos)
    pos += 1

    mults: list[int] = []
    if not text[pos:].strip():
        return degree, mults
    while True:
        atom = _ATOM.match(text, pos)
        if atom is None:
            raise NotationError("Expected a multiplicity", pos)
        value, count = int(atom.group(1)), atom.group(2)
        if value < 0:
            raise NotationError("Multiplicities must be nonnegative", atom.start(1))
        repeat = 1 if count is None else int(count)
        if repeat < 1:
            raise NotationError("Exponents must be positive", atom.start(2))
        mults.extend([value] * repeat)
        pos = atom.end()
        if pos == len(text):
            return degree, mults
        if text[pos] != ",":
            raise NotationError(f"Unexpected {text[pos]!r}", pos)
        pos += 1


def parse_class(text: str) -> DivisorClass:
    """Parse notation into a class, keeping every entry in the given order."""
    degree, mults = _scan(text)
    return DivisorClass(degree, tuple(mults))


def parse_system(
    text: str, surface: str = "p2", h_squared: int | None = None
) -> SystemSpec:
    """Parse notation into a system: entries 2 become double points, zeros are dropped.

    On K3, abelian and Enriques surfaces the degree is the multiple c of H and
    every entry must be 2.
    """
    degree, mults = _scan(text)
    profile = SurfaceProfile.of(surface)
    doubles = mults.count(2)
    others = tuple(m for m in mults if m not in (0, 2))
    if profile.is_rational:
        return SystemSpec(profile, DivisorClass(degree, others), doubles)

    if others:
        raise MalformedClassError(f"Only double points are allowed on {profile.kind}")
    if h_squared is None:
        raise MalformedClassError(f"H^2 is required on {profile.kind}")
    base = PolarizedClass(degree, h_squared)
    if profile.is_kodaira_zero:
        base.validate()
    return SystemSpec(profile, base, doubles)


def _fold(values: Iterable[int]) -> str:
    counts = Counter(v for v in values if v)
    parts = []
    for value in sorted(counts, reverse=True):
        parts.append(str(value) if counts[value] == 1 else f"{value}^{counts[value]}")
    return ", ".join(parts)


def render_class(cls: DivisorClass) -> str:
    """Render a class canonically, e.g. ``(2; 1^5)`` or ``(2;)``."""
    folded = _fold(cls.mults)
    return f"({cls.degree}; {folded})" if folded else f"({cls.degree};)"


def render_system(spec: SystemSpec) -> str:
    """Render a system canonically, e.g. ``4; 2^5``."""
    if isinstance(spec.base, PolarizedClass):
        folded = _fold((2,) * spec.doubles)
        return f"{spec.base.multiple}; {folded}" if folded else f"{spec.base.multiple};"
    folded = _fold(spec.full_class().mults)
    return f"{spec.base.degree}; {folded}" if folded else f"{spec.base.degree};"


def render_trace(trace: CremonaTrace) -> list[str]:
    """Describe every trace operation with 1-based slots."""
    lines = []
    for op in trace.ops:
        if isinstance(op, CremonaStep):
            i, j, k = (s + 1 for s in op.slots)
            lines.append(f"cremona({i}, {j}, {k}) t={op.t}")
        elif isinstance(op, Permutation):
            lines.append(f"sort [{', '.join(str(s + 1) for s in op.order)}]")
        elif isinstance(op, Peel):
            lines.append(f"peel {op.amount}*e_{op.slot + 1}")
    return lines
