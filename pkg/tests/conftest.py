"""Shared fixtures for specialsys tests."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from specialsys.cli import run
from specialsys.cremona import enumerate_minus_one_classes
from specialsys.lattice import DivisorClass

GOLDEN_DIR = Path(__file__).parent / "golden"

# Systems known to be special, as (degree, free mults, doubles)
KNOWN_SPECIAL = [
    (2, (), 2),
    (4, (), 5),
    (4, (2,), 4),
    (6, (4,), 6),
    (8, (6,), 8),
]


def plane(degree: int, *mults: int) -> DivisorClass:
    """Build (d; m_1, ..., m_r)."""
    return DivisorClass(degree, mults)


def load_golden(name: str) -> str:
    """Return the text of a golden file."""
    return (GOLDEN_DIR / name).read_text()


def random_classes(
    rng: np.random.Generator, count: int, slots: int = 6, bound: int = 8
) -> list[DivisorClass]:
    """Draw classes with entries in [-bound, bound]."""
    values = rng.integers(-bound, bound + 1, size=(count, slots + 1))
    return [DivisorClass(int(row[0]), tuple(int(v) for v in row[1:])) for row in values]


def random_standard_classes(
    rng: np.random.Generator, count: int, slots: int = 8, bound: int = 6
) -> list[DivisorClass]:
    """Draw classes in standard form: sorted, nonnegative, d >= m1 + m2 + m3."""
    found = []
    for _ in range(count):
        mults = sorted((int(v) for v in rng.integers(0, bound + 1, size=slots)), reverse=True)
        degree = sum(mults[:3]) + int(rng.integers(0, bound + 1))
        found.append(DivisorClass(degree, tuple(mults)))
    return found


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded generator."""
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def minus_one_classes() -> dict[int, tuple[DivisorClass, ...]]:
    """Return every (-1)-class on 1..8 slots."""
    return {slots: enumerate_minus_one_classes(slots, 6) for slots in range(1, 9)}


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., tuple[int, str]]:
    """Run the CLI with an empty environment and return (exit code, stdout)."""

    def _run(*argv: str, environ: dict[str, str] | None = None) -> tuple[int, str]:
        code = run(list(argv), environ or {})
        return code, capsys.readouterr().out

    return _run
