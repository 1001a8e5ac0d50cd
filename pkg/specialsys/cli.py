"""Command-line front end for specialsys."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections.abc import Callable, Mapping, Sequence
from typing import Any

from . import __version__
from .classify import (
    Decomposition,
    SecantReport,
    Verdict,
    classify_kodaira_zero,
    secant_report,
    speciality_plane,
)
from .const import (
    CONF_JOBS,
    CONF_PRIME,
    CONF_PRIMES,
    CONF_SEED,
    CONF_TRIALS,
    DOMAIN,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    MODE_ORACLE,
    MODE_SYMBOLIC,
    SCHEMA_VERSION,
)
from .coordinator import ScanCoordinator
from .cremona import enumerate_minus_one_classes, negative_curves, to_standard_form
from .exceptions import MalformedClassError, ScopeError, SpecialSysError
from .lattice import DivisorClass, expected_dim, virtual_dim
from .models import PolarizedClass, SurfaceKind, SystemSpec
from .notation import parse_class, parse_system, render_class, render_system, render_trace
from .oracle import InterpolationProblem, actual_dim, actual_dim_multi, dimension_pair
from .schema import load_options, validate_document

_LOGGER = logging.getLogger(__name__)

Output = tuple[dict[str, Any], list[str]]


class VerifyMismatch(Exception):
    """The oracle disagreed with a symbolic verdict."""

    def __init__(self, output: Output) -> None:
        """Keep the output so it can still be printed."""
        super().__init__("symbolic verdict and oracle disagree")
        self.output = output


def _class_json(cls: DivisorClass | None) -> dict[str, Any] | None:
    if cls is None:
        return None
    return {"degree": cls.degree, "mults": list(cls.mults)}


def _document(command: str, **fields: Any) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": command, **fields}


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _prime_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"invalid prime list {text!r}") from err


def _cmd_vdim(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    spec = parse_system(args.system, args.surface, args.hsq)
    if not spec.surface.is_rational:
        return _kodaira_output(spec)
    cls = spec.full_class()
    vdim, edim = virtual_dim(cls), expected_dim(cls)
    document = _document(
        "vdim", system=render_system(spec), **{"class": _class_json(cls)}, vdim=vdim, edim=edim
    )
    return document, [f"vdim={vdim}, edim={edim}"]


def _cmd_adim(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    spec = parse_system(args.system)
    cls = spec.full_class()
    problem = InterpolationProblem.from_class(
        cls, prime=options[CONF_PRIME], trials=options[CONF_TRIALS], seed=options[CONF_SEED]
    )
    if args.primes is not None:
        multi = actual_dim_multi(problem, options[CONF_PRIMES], options[CONF_JOBS])
        results, agree = multi.results, multi.agree
    else:
        results, agree = (actual_dim(problem, options[CONF_JOBS]),), True

    vdim = virtual_dim(cls)
    document = _document(
        "adim",
        system=render_system(spec),
        **{"class": _class_json(cls)},
        vdim=vdim,
        adim=results[0].adim,
        seed=problem.seed,
        trials=problem.trials,
        agree=agree,
        results=[
            {"prime": r.prime, "rank": r.rank, "adim": r.adim, "per_trial": list(r.per_trial)}
            for r in results
        ],
    )
    lines = [f"vdim={vdim}, adim={results[0].adim}"]
    lines += [f"p={r.prime}: rank={r.rank}, adim={r.adim}, trials={list(r.per_trial)}"
              for r in results]
    if not agree:
        lines.append("moduli disagree")
    return document, lines


def _decomposition_lines(decomposition: Decomposition) -> list[str]:
    fixed = " + ".join(
        render_class(c.cls) if c.multiplicity == 1 else f"{c.multiplicity}*{render_class(c.cls)}"
        for c in decomposition.fixed
    )
    if decomposition.free is None:
        free = "none"
    elif decomposition.free_multiple > 1:
        base = DivisorClass(
            decomposition.free.degree,
            tuple(m // decomposition.free_multiple for m in decomposition.free.mults),
        )
        free = f"{decomposition.free_multiple}*{render_class(base)}"
    else:
        free = render_class(decomposition.free)
    lines = [f"fixed: {fixed or 'none'}", f"free: {free}"]
    if decomposition.double_point_pencil is not None:
        slot, pencil = decomposition.double_point_pencil
        lines.append(f"pencil: double point {slot + 1}, D={pencil}")
    return lines


def _verdict_document(system: str, verdict: Verdict, oracle_adim: int | None) -> dict[str, Any]:
    decomposition = verdict.decomposition or Decomposition(())
    double_point_pencil = None
    if decomposition.double_point_pencil is not None:
        slot, pencil = decomposition.double_point_pencil
        double_point_pencil = {"slot": slot + 1, "class": _class_json(pencil)}
    return _document(
        "special",
        system=system,
        vdim=verdict.vdim,
        edim=verdict.edim,
        adim=verdict.adim_predicted,
        special=verdict.special,
        certainty=verdict.certainty,
        witness=_class_json(verdict.witness),
        fixed=[
            {"class": _class_json(c.cls), "multiplicity": c.multiplicity}
            for c in decomposition.fixed
        ],
        free=_class_json(decomposition.free),
        free_multiple=decomposition.free_multiple,
        pencil=_class_json(decomposition.pencil),
        double_point_pencil=double_point_pencil,
        oracle_adim=oracle_adim,
    )


def _cmd_special(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    spec = parse_system(args.system, args.surface, args.hsq)
    if not spec.surface.is_rational:
        if args.verify:
            raise ScopeError(
                f"--verify runs the plane oracle and cannot check {spec.surface.kind}"
            )
        return _kodaira_output(spec)
    verdict = speciality_plane(spec)
    head = f"special: {_yes(verdict.special)}, vdim={verdict.vdim}, adim={verdict.adim_predicted}"
    if verdict.witness is not None:
        head += f", witness={render_class(verdict.witness)}"
    lines = [head]
    if verdict.decomposition is not None:
        lines += _decomposition_lines(verdict.decomposition)

    oracle_adim = None
    if args.verify:
        _, oracle_adim = dimension_pair(
            spec, prime=options[CONF_PRIME], trials=options[CONF_TRIALS], seed=options[CONF_SEED]
        )
        lines.append(f"oracle: adim={oracle_adim}")
    output = _verdict_document(render_system(spec), verdict, oracle_adim), lines
    if oracle_adim is not None and oracle_adim != verdict.adim_predicted:
        raise VerifyMismatch(output)
    return output


def _cmd_reduce(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    cls = parse_class(args.system)
    reduced = to_standard_form(cls, peel=not args.no_peel)
    slot = None if reduced.slot is None else reduced.slot + 1
    trace = render_trace(reduced.trace)
    document = _document(
        "reduce",
        input=_class_json(cls),
        **{"class": _class_json(reduced.cls)},
        terminal=str(reduced.terminal),
        slot=slot,
        value=reduced.value,
        degrees=list(reduced.degrees),
        trace=trace,
    )
    lines = [
        f"class: {reduced.cls}",
        f"terminal: {reduced.terminal}" + (f" at slot {slot} ({reduced.value})" if slot else ""),
        f"degrees: {' -> '.join(str(d) for d in reduced.degrees)}",
        *trace,
    ]
    return document, lines


def _cmd_neg_curves(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    against = None
    if args.against is not None:
        against = parse_class(args.against)
        bound = args.max_degree if args.max_degree is not None else 2 * max(against.degree, 0)
        classes = negative_curves(against, bound)
        slots = max(against.normalize().slots, 1)
    else:
        if args.slots is None:
            raise argparse.ArgumentTypeError("--slots is required without --against")
        bound = args.max_degree if args.max_degree is not None else args.slots
        classes = list(enumerate_minus_one_classes(args.slots, bound))
        slots = args.slots
    document = _document(
        "neg-curves",
        slots=slots,
        max_degree=bound,
        against=_class_json(against),
        count=len(classes),
        classes=[_class_json(c) for c in classes],
    )
    return document, [f"count: {len(classes)}", *(str(c) for c in classes)]


def _report_json(report: SecantReport) -> dict[str, Any]:
    return {
        "class": _class_json(report.cls),
        "k": report.k,
        "ambient_dim": report.ambient_dim,
        "expected": report.expected,
        "actual": report.actual,
        "defective": report.defective,
        "mode": report.mode,
    }


def _cmd_secant(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    cls = parse_class(args.system)
    report = secant_report(
        cls,
        args.k,
        args.mode,
        prime=options[CONF_PRIME],
        trials=options[CONF_TRIALS],
        seed=options[CONF_SEED],
    )
    line = (
        f"H={render_class(report.cls)} k={report.k}: N={report.ambient_dim}, "
        f"expected={report.expected}, actual={report.actual}, "
        f"defective: {_yes(report.defective)}"
    )
    return _document("secant", report=_report_json(report)), [line]


def _cmd_scan(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    data = ScanCoordinator(
        args.dmax,
        args.kmax,
        args.mode,
        jobs=options[CONF_JOBS],
        prime=options[CONF_PRIME],
        trials=options[CONF_TRIALS],
        seed=options[CONF_SEED],
    ).run()
    reports = data.reports
    candidates = data.candidates
    document = _document(
        "scan",
        d_max=args.dmax,
        k_max=args.kmax,
        mode=args.mode,
        candidates=candidates,
        reports=[_report_json(r) for r in reports],
    )
    lines = [f"{'H':<12} {'k':>3} {'N':>4} {'expected':>9} {'actual':>7}"]
    lines += [
        f"{render_class(r.cls):<12} {r.k:>3} {r.ambient_dim:>4} {r.expected:>9} {r.actual:>7}"
        for r in reports
    ]
    return document, lines


def _cmd_classify(args: argparse.Namespace, options: dict[str, Any]) -> Output:
    text = f"{args.multiple}; " + ", ".join(["2"] * args.doubles)
    return _kodaira_output(parse_system(text, args.surface, args.hsq))


def _kodaira_output(spec: SystemSpec) -> Output:
    verdict = classify_kodaira_zero(spec)
    if not isinstance(spec.base, PolarizedClass):
        raise MalformedClassError("classify takes an abstract class c*H")
    document = _document(
        "classify",
        surface=str(spec.surface.kind),
        chi=spec.surface.chi,
        multiple=spec.base.multiple,
        h_squared=spec.base.h_squared,
        doubles=spec.doubles,
        vdim=verdict.vdim,
        edim=verdict.edim,
        adim=verdict.adim_predicted,
        special=verdict.special,
        certainty=verdict.certainty,
        reason=verdict.reason,
    )
    lines = [
        f"special: {_yes(verdict.special)} ({verdict.reason})",
        f"vdim={verdict.vdim}, edim={verdict.edim}, adim={verdict.adim_predicted} "
        f"[{verdict.certainty}]",
    ]
    return document, lines


Handler = Callable[[argparse.Namespace, dict[str, Any]], Output]


def _oracle_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--prime", type=int, help="field modulus (default 2^31-1)")
    parser.add_argument("--trials", type=int, help="random placements per modulus")
    parser.add_argument("--seed", type=int, help="seed for the random points")


def _jobs_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--jobs", type=int, help="worker pool size")


def _surface_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--surface",
        choices=[k.value for k in SurfaceKind],
        default=SurfaceKind.RATIONAL.value,
        help="surface carrying the system; off the plane the degree is the multiple of H",
    )
    parser.add_argument("--hsq", type=int, default=2, help="H^2 off the plane")


def _mode_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=[MODE_SYMBOLIC, MODE_ORACLE], default=MODE_SYMBOLIC)


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN, description="Speciality of linear systems of plane curves."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="print a JSON document")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    # repeated on every subcommand so the flags may follow it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = add("vdim", _cmd_vdim, "virtual and expected dimension")
    sub.add_argument("system")
    _surface_flags(sub)

    sub = add("adim", _cmd_adim, "actual dimension by the interpolation oracle")
    sub.add_argument("system")
    _oracle_flags(sub)
    sub.add_argument("--primes", type=_prime_list, help="comma-separated moduli")
    _jobs_flag(sub)

    sub = add("special", _cmd_special, "speciality verdict with witness")
    sub.add_argument("system")
    sub.add_argument("--verify", action="store_true", help="check against the oracle")
    _surface_flags(sub)
    _oracle_flags(sub)

    sub = add("reduce", _cmd_reduce, "reduce a class to standard form")
    sub.add_argument("system")
    sub.add_argument("--no-peel", action="store_true", help="stop at any negative entry")

    sub = add("neg-curves", _cmd_neg_curves, "enumerate (-1)-classes")
    sub.add_argument("--slots", type=int)
    sub.add_argument("--max-degree", type=int)
    sub.add_argument("--against", help="keep classes meeting this class negatively")

    sub = add("secant", _cmd_secant, "k-secant defectivity of one embedding")
    sub.add_argument("system")
    sub.add_argument("--k", type=int, required=True)
    _mode_flag(sub)
    _oracle_flags(sub)

    sub = add("scan", _cmd_scan, "list defective k-secant varieties")
    sub.add_argument("--dmax", type=int, required=True)
    sub.add_argument("--kmax", type=int, required=True)
    _mode_flag(sub)
    _oracle_flags(sub)
    _jobs_flag(sub)

    sub = add("classify", _cmd_classify, "double-point systems on K3, abelian, Enriques")
    sub.add_argument(
        "--surface",
        choices=[k.value for k in SurfaceKind if k is not SurfaceKind.RATIONAL],
        required=True,
    )
    sub.add_argument("--hsq", type=int, default=2, help="H^2")
    sub.add_argument("--multiple", type=int, default=1, help="coefficient of H")
    sub.add_argument("--doubles", type=int, default=0)
    return parser


def _print(output: Output, as_json: bool) -> None:
    document, lines = output
    if as_json:
        print(json.dumps(validate_document(document), indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def run(argv: Sequence[str] | None = None, environ: Mapping[str, str] | None = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE

    level = (logging.WARNING, logging.INFO)[args.verbose] if args.verbose < 2 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    overrides = {
        name: getattr(args, name, None)
        for name in (CONF_SEED, CONF_PRIME, CONF_PRIMES, CONF_TRIALS, CONF_JOBS)
    }
    try:
        options = load_options(os.environ if environ is None else environ, overrides)
        output = args.handler(args, options)
    except VerifyMismatch as err:
        _print(err.output, args.json)
        _LOGGER.error("%s: %s", args.command, err)
        return EXIT_MISMATCH
    except (SpecialSysError, argparse.ArgumentTypeError) as err:
        _LOGGER.error("%s: %s", args.command, err)
        return EXIT_USAGE
    _print(output, args.json)
    return EXIT_OK


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())
