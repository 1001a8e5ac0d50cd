"""Speciality of linear systems of plane curves through general multiple points."""

from __future__ import annotations

from .classify import (
    Decomposition,
    FixedComponent,
    SecantReport,
    Verdict,
    classify_kodaira_zero,
    pencil_invariants,
    pencil_multiplicity_constraint,
    predict_adim,
    scan_defective,
    secant_report,
    speciality_plane,
    very_ample_check,
)
from .cremona import (
    CremonaTrace,
    ReducedForm,
    Terminal,
    apply_cremona,
    enumerate_minus_one_classes,
    is_minus_one_class,
    to_standard_form,
)
from .exceptions import SpecialSysError
from .lattice import (
    DivisorClass,
    arithmetic_genus,
    canonical_class,
    expected_dim,
    intersect,
    virtual_dim,
)
from .models import PolarizedClass, SurfaceKind, SurfaceProfile, SystemSpec
from .notation import parse_system, render_class, render_system
from .oracle import InterpolationProblem, RankResult, actual_dim, dimension_pair

__version__ = "0.1.0"

__all__ = [
    "CremonaTrace",
    "Decomposition",
    "DivisorClass",
    "FixedComponent",
    "InterpolationProblem",
    "PolarizedClass",
    "RankResult",
    "ReducedForm",
    "SecantReport",
    "SpecialSysError",
    "SurfaceKind",
    "SurfaceProfile",
    "SystemSpec",
    "Terminal",
    "Verdict",
    "__version__",
    "actual_dim",
    "apply_cremona",
    "arithmetic_genus",
    "canonical_class",
    "classify_kodaira_zero",
    "dimension_pair",
    "enumerate_minus_one_classes",
    "expected_dim",
    "intersect",
    "is_minus_one_class",
    "parse_system",
    "pencil_invariants",
    "pencil_multiplicity_constraint",
    "predict_adim",
    "render_class",
    "render_system",
    "scan_defective",
    "secant_report",
    "speciality_plane",
    "to_standard_form",
    "very_ample_check",
    "virtual_dim",
]
