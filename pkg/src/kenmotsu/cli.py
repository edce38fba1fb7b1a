"""Command-line entry point: ``kenmotsu verify|analyze|example``.

Exit codes: 0 pass, 1 mathematical failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .exact import to_scalar
from .geometry import compute_geometry
from .manifold import CATALOG, SpecError, example_text, load_spec
from .report import analysis_report, exit_status, to_json, to_text, verify_report
from .soliton import Variant

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


def _rational(text: str):
    try:
        return to_scalar(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kenmotsu", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--out", help="write the report to this file instead of standard output")
        p.add_argument("--force", action="store_true", help="evaluate Kenmotsu-only checks on any spec")

    v = sub.add_parser("verify", help="check the almost contact, Kenmotsu and derived identities")
    v.add_argument("path")
    output_flags(v)

    a = sub.add_parser("analyze", help="solve the soliton equation and run the theorem checks")
    a.add_argument("path")
    a.add_argument("--p", type=_rational, default=None, help="conformal scalar p (overrides the document)")
    a.add_argument("--variant", choices=[x.value for x in Variant], default=Variant.CONFORMAL_ETA_EINSTEIN.value)
    output_flags(a)

    e = sub.add_parser("example", help="print a built-in spec document")
    e.add_argument("name")
    return parser


def _emit(report: dict, args) -> None:
    text = to_json(report) if args.format == "structured" else to_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(report["verdict"])
    else:
        sys.stdout.write(text)


def _fail_input(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "example":
        if args.name not in CATALOG:
            return _fail_input(f"unknown example {args.name!r}; catalog: {', '.join(CATALOG)}")
        sys.stdout.write(example_text(args.name))
        return EXIT_OK

    try:
        spec = load_spec(args.path)
    except OSError as exc:
        return _fail_input(f"cannot read {args.path}: {exc.strerror or exc}")
    except SpecError as exc:
        where = f" [field: {exc.field}]" if exc.field else ""
        return _fail_input(f"{exc}{where}")

    geometry = compute_geometry(spec)
    if args.command == "verify":
        report = verify_report(geometry, force=args.force)
    else:
        variant = Variant(args.variant)
        p = args.p if args.p is not None else spec.p
        if variant.conformal and p is None:
            return _fail_input(f"variant {variant.value} needs p: pass --p or set 'p' in the document")
        report = analysis_report(geometry, p, variant, force=args.force)
    _emit(report, args)
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())
