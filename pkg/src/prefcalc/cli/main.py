"""Command-line entry point.

Exit codes: 0 success, 1 check failure, 2 parse/usage error,
3 validation error, 4 internal error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from prefcalc.cli import render
from prefcalc.cli.formula import FormulaError, parse_formula
from prefcalc.cli.problem import (
    ProblemSpec,
    SpecParseError,
    SpecValidationError,
    evaluate,
    load_spec,
    query_bounds,
)
from prefcalc.errors import EmptyPropositionError
from prefcalc.norm_algebra import PROFILE_NAMES, NormProfile, verify_profile
from prefcalc.worlds import atoms_of, eval_formula

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_VALIDATION, EXIT_INTERNAL = 0, 1, 2, 3, 4

CHECK_NOTES = [
    "possible bound of a proposition is the supremum of the measure over its worlds",
    "necessary/possible preference of p over q: inf-inf / sup-inf over (p-world, q-world) pairs",
]


def _grid(text: str) -> Fraction:
    try:
        step = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid grid step {text!r}; expected 1/N") from None
    if step <= 0 or step > 1 or (1 / step).denominator != 1:
        raise argparse.ArgumentTypeError(f"grid step {text} does not divide 1 evenly")
    return step


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("json", "table"), default=d("json"), help="output format")
    p.add_argument("--profile", choices=PROFILE_NAMES, default=d(None), help="override the spec's norm profile")
    p.add_argument("--grid", type=_grid, default=d(Fraction(1, 16)), help="grid step 1/N used by check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefcalc", description="Desirability and preference calculus over possible worlds.")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", parents=[common], help="rank worlds by aggregate desirability")
    p.add_argument("spec")
    p = sub.add_parser("check", parents=[common], help="verify the profile and every derived relation")
    p.add_argument("spec")
    p = sub.add_parser("matrix", parents=[common], help="print the preference or similarity matrix")
    p.add_argument("spec")
    p.add_argument("--kind", choices=("preference", "similarity"), default="preference")
    p = sub.add_parser("bounds", parents=[common], help="necessary/possible bounds for a proposition")
    p.add_argument("spec")
    p.add_argument("--of", required=True, dest="of", help="formula over the spec's atoms")
    p.add_argument("--given", default=None, help="second formula: bound the preference of --of over it")
    return parser


def _spec(args: argparse.Namespace) -> ProblemSpec:
    spec = load_spec(args.spec)
    if args.profile:
        spec = spec.with_profile(NormProfile.named(args.profile))
    return spec


def _bounds(spec: ProblemSpec, of: str, given: str | None):
    report = evaluate(spec)
    names = set(spec.universe.atoms)
    for flag, text in (("--of", of), ("--given", given)):
        if text is None:
            continue
        try:
            f = parse_formula(text)
        except FormulaError as e:
            raise SpecValidationError(flag, str(e)) from None
        unknown = atoms_of(f) - names
        if unknown:
            raise SpecValidationError(flag, f"unknown atoms {sorted(unknown)}")
        if eval_formula(spec.universe, f).is_empty():
            raise SpecValidationError(flag, f"proposition {text!r} holds in no world")
    pref = report.preference
    if report.is_interval:
        pref = pref.tightened()  # type: ignore[union-attr]
    return query_bounds(report.aggregate, pref, spec.universe, of, given)


def _run(args: argparse.Namespace) -> int:
    spec = _spec(args)
    table = args.format == "table"
    out = sys.stdout

    if args.command == "rank":
        report = evaluate(spec)
        out.write((render.rank_table(report) if table else render.dumps(render.rank_data(report))) + "\n")
        return EXIT_OK

    if args.command == "matrix":
        report = evaluate(spec)
        text = render.matrix_table(report, args.kind) if table else render.dumps(render.matrix_data(report, args.kind))
        out.write(text + "\n")
        return EXIT_OK

    if args.command == "bounds":
        b = _bounds(spec, args.of, args.given)
        out.write((render.bounds_table(b) if table else render.dumps(render.bounds_data(b))) + "\n")
        return EXIT_OK

    # check
    reports = [verify_profile(spec.profile, args.grid)]
    reports += evaluate(spec).reports
    notes = list(CHECK_NOTES)
    if table:
        out.write(render.check_table(reports, notes) + "\n")
    else:
        data = render.check_data(reports, notes, profile=spec.profile.to_config(), grid=str(args.grid))
        out.write(render.dumps(data) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _run(args)
    except SpecParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (SpecValidationError, EmptyPropositionError) as e:
        print(f"invalid spec: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_cli())
