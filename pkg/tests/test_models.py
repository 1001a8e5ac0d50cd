"""Tests for surface profiles and system descriptions."""

from __future__ import annotations

import pytest

from specialsys.exceptions import MalformedClassError
from specialsys.models import (
    PLANE,
    PolarizedClass,
    SurfaceKind,
    SurfaceProfile,
    SystemSpec,
)

from .conftest import plane


def test_profile_from_tag() -> None:
    """CLI tags map onto kinds."""
    assert SurfaceProfile.of("k3").kind is SurfaceKind.K3
    assert SurfaceProfile.of(SurfaceKind.ENRIQUES).chi == 1
    assert SurfaceProfile.of("p2") == PLANE
    assert PLANE.is_rational
    assert not PLANE.is_kodaira_zero
    assert not SurfaceProfile.of("hyperelliptic").is_kodaira_zero


def test_unknown_surface() -> None:
    """An unknown tag is malformed."""
    with pytest.raises(MalformedClassError, match="Unknown surface"):
        SurfaceProfile.of("torus")


def test_negative_doubles() -> None:
    """The double-point count is nonnegative."""
    with pytest.raises(MalformedClassError):
        SystemSpec.plane(4, (), -1)


def test_full_class_appends_doubles() -> None:
    """Double points follow the base slots."""
    spec = SystemSpec.plane(6, (4, 0), 3)
    assert spec.full_class() == plane(6, 4, 0, 2, 2, 2)
    assert spec.double_slots == range(2, 5)
    assert spec.free_slots == 1


def test_polarized_class() -> None:
    """(cH)^2 = c^2 H^2; abstract systems have no plane class."""
    base = PolarizedClass(3, 4)
    assert base.self_intersection == 36
    spec = SystemSpec(SurfaceProfile(SurfaceKind.K3), base, 2)
    assert spec.free_slots == 0
    assert spec.double_slots == range(0, 2)
    with pytest.raises(MalformedClassError):
        spec.full_class()
