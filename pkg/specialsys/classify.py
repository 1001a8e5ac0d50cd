"""Speciality verdicts, Kodaira-0 rules and secant defectivity reports."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import gcd

from .const import (
    CERTAINTY_PREDICTED,
    CERTAINTY_THEOREM,
    DEFAULT_JOBS,
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MAX_FREE_SLOTS,
    MODE_ORACLE,
    MODE_SYMBOLIC,
)
from .cremona import CremonaTrace, Peel, Terminal, is_minus_one_class, to_standard_form
from .exceptions import (
    MalformedClassError,
    PreconditionError,
    ScopeError,
    UnsupportedSurfaceError,
)
from .lattice import (
    DivisorClass,
    canonical_degree,
    intersect,
    self_intersection,
    virtual_dim,
)
from .models import PolarizedClass, SurfaceKind, SystemSpec
from .oracle import InterpolationProblem, actual_dim

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class FixedComponent:
    """A (-1)-class in the base locus and how many times it is fixed."""

    cls: DivisorClass
    multiplicity: int


@dataclass(frozen=True, slots=True)
class Decomposition:
    """Peeled structure |L| = F + |n*D|, in the slot labels of the input."""

    fixed: tuple[FixedComponent, ...]
    free: DivisorClass | None = None
    free_multiple: int = 0
    pencil: DivisorClass | None = None
    double_point_pencil: tuple[int, DivisorClass] | None = None


@dataclass(frozen=True, slots=True)
class Verdict:
    """Dimension counts and speciality of one system."""

    vdim: int
    edim: int
    adim_predicted: int
    special: bool
    witness: DivisorClass | None = None
    decomposition: Decomposition | None = None
    trace: CremonaTrace = field(default_factory=CremonaTrace)
    certainty: str = CERTAINTY_THEOREM
    reason: str | None = None


@dataclass(frozen=True, slots=True)
class SecantReport:
    """Terracini count for the k-secant variety of the embedding by H."""

    cls: DivisorClass
    k: int
    ambient_dim: int
    expected: int
    actual: int
    defective: bool
    mode: str = MODE_SYMBOLIC


@dataclass(frozen=True, slots=True)
class _Reduction:
    trace: CremonaTrace
    fixed: dict[DivisorClass, int]
    final: DivisorClass
    empty: bool


def _peel_and_reduce(cls: DivisorClass) -> _Reduction:
    """Reduce to standard form, peeling every negative exceptional class met."""
    trace = CremonaTrace()
    fixed: dict[DivisorClass, int] = {}
    current = cls

    def record(curve: DivisorClass, amount: int) -> None:
        key = curve.normalize()
        fixed[key] = fixed.get(key, 0) + amount

    while True:
        reduced = to_standard_form(current, peel=True)
        offset = len(trace.ops)
        trace = trace.then(reduced.trace)
        for position, op in enumerate(reduced.trace.ops):
            if isinstance(op, Peel):
                frame = trace.prefix(offset + position)
                record(frame.pullback(DivisorClass.exceptional(op.slot)), op.amount)

        if reduced.terminal is Terminal.STANDARD:
            return _Reduction(trace, fixed, reduced.cls, empty=False)
        if reduced.terminal is Terminal.NEGATIVE_DEGREE or reduced.cls.degree < 0:
            return _Reduction(trace, fixed, reduced.cls, empty=True)

        slot = reduced.slot if reduced.slot is not None else 0
        peel = Peel(slot, -reduced.cls.mults[slot])
        record(trace.pullback(DivisorClass.exceptional(slot)), peel.amount)
        _LOGGER.debug("Peeling %d copies of e_%d from %s", peel.amount, slot + 1, reduced.cls)
        trace = trace.then(CremonaTrace((peel,)))
        current = peel.apply(reduced.cls)


def predict_adim(cls: DivisorClass) -> int:
    """Return the predicted actual dimension by trace-free peel-and-reduce.

    Same algorithm as ``speciality_plane``; negative exceptional entries are
    removed all at once since distinct exceptional classes are orthogonal.
    """
    degree = cls.degree
    mults = [*cls.mults, 0, 0, 0]
    while True:
        mults.sort(reverse=True)
        if mults[-1] < 0:
            if degree < 0:
                return -1
            mults = [max(m, 0) for m in mults]
            continue
        if degree < 0:
            return -1
        t = mults[0] + mults[1] + mults[2] - degree
        if t <= 0:
            vdim = degree * (degree + 3) // 2 - sum(m * (m + 1) // 2 for m in mults)
            return max(vdim, -1)
        degree -= t
        mults[0] -= t
        mults[1] -= t
        mults[2] -= t


def _free_part(free: DivisorClass) -> tuple[DivisorClass | None, int, DivisorClass | None]:
    free = free.normalize()
    if free.is_zero():
        return None, 0, None
    multiple = gcd(free.degree, *free.mults)
    base = DivisorClass(free.degree // multiple, tuple(m // multiple for m in free.mults))
    if self_intersection(base) == 0 and canonical_degree(base) == -2:
        return free, multiple, base
    return free, multiple, None


def _double_point_pencil(
    witness: DivisorClass, double_slots: range
) -> tuple[int, DivisorClass] | None:
    for slot in double_slots:
        if witness.mult(slot) == 1:
            return slot, (witness + DivisorClass.exceptional(slot)).normalize()
    return None


def classify_class(cls: DivisorClass, double_slots: range | None = None) -> Verdict:
    """Return the peel-and-reduce verdict for any class on the blown-up plane."""
    vdim = virtual_dim(cls)
    edim = max(vdim, -1)
    reduction = _peel_and_reduce(cls)
    if reduction.empty:
        return Verdict(vdim, edim, -1, special=False, trace=reduction.trace)

    adim = max(virtual_dim(reduction.final), -1)
    special = adim > edim
    if adim < 0:
        return Verdict(vdim, edim, adim, special=False, trace=reduction.trace)

    fixed = tuple(FixedComponent(curve, count) for curve, count in reduction.fixed.items())
    free_cls = cls
    for component in fixed:
        free_cls = free_cls - component.multiplicity * component.cls
    free, multiple, pencil = _free_part(free_cls)

    witness = None
    double_point_pencil = None
    if special:
        heavy = [c.cls for c in fixed if c.multiplicity >= 2]
        certified = [w for w in heavy if intersect(cls, w) <= -2]
        if certified:
            witness = certified[0]
        else:
            witness = heavy[0]
            _LOGGER.warning("No peeled curve certifies L.W <= -2 for %s; using %s", cls, witness)
        double_point_pencil = _double_point_pencil(witness, double_slots or range(0))

    decomposition = Decomposition(fixed, free, multiple, pencil, double_point_pencil)
    return Verdict(vdim, edim, adim, special, witness, decomposition, reduction.trace)


def speciality_plane(spec: SystemSpec) -> Verdict:
    """Decide speciality of a system of plane curves through 9 points plus doubles.

    The system is special iff some (-1)-curve W meets it with L.W <= -2; W is
    found by pulling back an exceptional class through the reduction trace.
    """
    if not spec.surface.is_rational:
        raise ScopeError(f"speciality_plane needs the blown-up plane, got {spec.surface.kind}")
    if spec.free_slots > MAX_FREE_SLOTS:
        raise ScopeError(
            f"{spec.free_slots} free points exceed the {MAX_FREE_SLOTS} covered by the "
            "classification; use the interpolation oracle instead"
        )
    return classify_class(spec.full_class(), spec.double_slots)


def pencil_invariants(chi: int) -> tuple[int, int]:
    """Return (D^2, D.K) for the pencil a special double-point system is composed with."""
    if chi not in (0, 1, 2):
        raise MalformedClassError(f"chi must be 0, 1 or 2, got {chi}")
    return chi - 1, 3 * chi - 5


def pencil_multiplicity_constraint(chi: int) -> Callable[[int], bool]:
    """Return the predicate n | 2(1 - chi) on the pencil multiplicity n."""
    bound = 2 * (1 - chi)

    def divides(n: int) -> bool:
        return n != 0 and bound % n == 0

    return divides


def pencil_consistent(verdict: Verdict) -> bool:
    """Check a special verdict's double-point pencil against the pencil invariants.

    D must satisfy (D^2, D.K) = (0, -2) and meet every other fixed component trivially.
    """
    decomposition = verdict.decomposition
    if decomposition is None or decomposition.double_point_pencil is None:
        return False
    _, pencil = decomposition.double_point_pencil
    if (self_intersection(pencil), canonical_degree(pencil)) != pencil_invariants(1):
        return False
    return all(
        intersect(component.cls, pencil) == 0
        for component in decomposition.fixed
        if component.cls != verdict.witness
    )


def classify_kodaira_zero(spec: SystemSpec) -> Verdict:
    """Apply the K3 / abelian / Enriques rules to c*H with s general double points.

    Only K3 with c = 2, H^2 = 2 and two double points is special, with defect 1.
    """
    kind = spec.surface.kind
    if kind is SurfaceKind.HYPERELLIPTIC:
        raise UnsupportedSurfaceError("unsupported: no classification in source")
    if not spec.surface.is_kodaira_zero:
        raise ScopeError("Rational systems are classified by speciality_plane")
    if not isinstance(spec.base, PolarizedClass):
        raise MalformedClassError("Kodaira-0 systems take an abstract class c*H")
    spec.base.validate()

    chi = spec.surface.chi
    vdim = spec.base.self_intersection // 2 + chi - 1 - 3 * spec.doubles
    edim = max(vdim, -1)
    d_squared, _ = pencil_invariants(chi)

    if kind is SurfaceKind.ABELIAN:
        _LOGGER.debug("An abelian pencil would need D^2=%d", d_squared)
        return Verdict(vdim, edim, edim, special=False, reason="never special on abelian surfaces")
    if kind is SurfaceKind.ENRIQUES:
        return Verdict(vdim, edim, edim, special=False, reason="never special on Enriques surfaces")

    if spec.doubles == 2 and spec.base.multiple == 2 and spec.base.h_squared == 2:
        return Verdict(
            vdim,
            edim,
            edim + 1,
            special=True,
            certainty=CERTAINTY_PREDICTED,
            reason="2H with H^2=2 through two double points factors through the double plane",
        )
    return Verdict(vdim, edim, edim, special=False, reason="not the 2H, H^2=2, two-point system")


def very_ample_check(cls: DivisorClass) -> bool:
    """Return True iff H is in standard form with d >= m1 + m2 + 1 and 3d - sum(m) >= 3."""
    if cls.normalize().slots > MAX_FREE_SLOTS:
        raise ScopeError(f"Very ampleness is decided on at most {MAX_FREE_SLOTS} points")
    if any(m < 0 for m in cls.mults):
        return False
    mults = sorted(cls.mults, reverse=True) + [0, 0, 0]
    d = cls.degree
    return (
        d >= mults[0] + mults[1] + mults[2]
        and d >= mults[0] + mults[1] + 1
        and 3 * d - sum(mults) >= 3
    )


def very_ample_classes(max_degree: int) -> Iterator[DivisorClass]:
    """Yield every sorted very ample class of degree <= max_degree on <= 9 points."""

    def extend(degree: int, prefix: tuple[int, ...], cap: int) -> Iterator[DivisorClass]:
        cls = DivisorClass(degree, prefix)
        # every inequality only gets harder as parts are added
        if not very_ample_check(cls):
            return
        yield cls
        if len(prefix) == MAX_FREE_SLOTS:
            return
        for value in range(cap, 0, -1):
            yield from extend(degree, (*prefix, value), value)

    for degree in range(1, max_degree + 1):
        yield from extend(degree, (), degree - 1)


def secant_report(
    cls: DivisorClass,
    k: int,
    mode: str = MODE_SYMBOLIC,
    *,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> SecantReport:
    """Compare dim Sec_k of the embedding by H with min(N, 3k + 2)."""
    if k < 0:
        raise PreconditionError(f"k must be nonnegative, got {k}")
    if not very_ample_check(cls):
        raise PreconditionError(
            f"{cls} is not very ample: it must be in standard form with "
            "d >= m1 + m2 + 1 and 3d - sum(m) >= 3"
        )
    ambient = virtual_dim(cls)
    system = cls.extend((2,) * (k + 1))
    if mode == MODE_SYMBOLIC:
        adim = predict_adim(system)
    elif mode == MODE_ORACLE:
        problem = InterpolationProblem.from_class(system, prime=prime, trials=trials, seed=seed)
        adim = actual_dim(problem).adim
    else:
        raise PreconditionError(f"Unknown mode {mode!r}")
    actual = ambient - 1 - adim
    expected = min(ambient, 3 * k + 2)
    return SecantReport(cls, k, ambient, expected, actual, actual < expected, mode)


def defective_reports(
    cls: DivisorClass,
    k_max: int,
    mode: str = MODE_SYMBOLIC,
    *,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> list[SecantReport]:
    """Return the defective reports of one H for k = 0..k_max."""
    found = []
    for k in range(k_max + 1):
        report = secant_report(cls, k, mode, prime=prime, trials=trials, seed=seed)
        if report.defective:
            found.append(report)
        if report.actual == report.ambient_dim:
            # the double-point system is empty from here on
            break
    return found


def scan_defective(
    d_max: int,
    k_max: int,
    mode: str = MODE_SYMBOLIC,
    *,
    jobs: int = DEFAULT_JOBS,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> tuple[SecantReport, ...]:
    """Return every defective (H, k) with deg H <= d_max and k <= k_max, sorted."""
    from .coordinator import ScanCoordinator

    coordinator = ScanCoordinator(
        d_max, k_max, mode, jobs=jobs, prime=prime, trials=trials, seed=seed
    )
    return tuple(coordinator.run().reports)


def plane_systems(
    max_degree: int, max_mult: int, max_doubles: int, free_slots: int = MAX_FREE_SLOTS
) -> Iterator[SystemSpec]:
    """Yield (d; m_1..m_r, 2^s) with sorted free multiplicities, without duplicates.

    Entries equal to 2 only ever appear as double points, as ``parse_system`` reads them.
    """
    values = [m for m in range(max_mult, -1, -1) if m != 2]
    for degree in range(max_degree + 1):
        for mults in combinations_with_replacement(values, free_slots):
            base = tuple(m for m in mults if m)
            for doubles in range(max_doubles + 1):
                yield SystemSpec.plane(degree, base, doubles)


def sweep_plane(
    systems: Iterable[SystemSpec],
    *,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> list[tuple[SystemSpec, str]]:
    """Compare symbolic verdicts with the oracle; return every disagreement found."""
    mismatches: list[tuple[SystemSpec, str]] = []
    for spec in systems:
        cls = spec.full_class()
        verdict = speciality_plane(spec)
        if cls.degree < 0:
            oracle_adim = -1
        else:
            problem = InterpolationProblem.from_class(cls, prime=prime, trials=trials, seed=seed)
            oracle_adim = actual_dim(problem).adim
        if verdict.adim_predicted != oracle_adim:
            message = f"symbolic adim {verdict.adim_predicted}, oracle adim {oracle_adim}"
            mismatches.append((spec, message))
        elif verdict.special:
            witness = verdict.witness
            if witness is None or intersect(cls, witness) > -2 or not is_minus_one_class(witness):
                mismatches.append((spec, f"witness {witness} does not certify speciality"))
    return mismatches
