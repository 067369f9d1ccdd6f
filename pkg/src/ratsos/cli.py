"""Command-line interface.

Exit codes partition outcomes so shell pipelines can branch without parsing
output:

    0   success (check: positive definite)
    10  check: positive semidefinite
    20  input is not nonnegative (witness printed)
    30  infeasible on the chosen support (witness printed)
    31  search exhausted
    1   verify: certificate does not match
    2   parse/usage error
    70  internal error: a certificate failed its own verification
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .certificate import SosCertificate, verify
from .multipoly import MultiPoly
from .parsing import ParseError, parse_certificate, parse_poly, parse_rational, render_certificate
from .pipeline import certify_univariate
from .positivity import Definiteness, DefinitenessReport
from .projectlift import certify_multivariate
from .solver import (
    DEFAULT_CORE_GRID,
    DEFAULT_DIAGONAL_GRID,
    Exhausted,
    InfeasibilityWitness,
    SearchConfig,
)
from .unipoly import format_rational, format_unipoly

EXIT_OK = 0
EXIT_PSD = 10
EXIT_NOT_NONNEGATIVE = 20
EXIT_INFEASIBLE = 30
EXIT_EXHAUSTED = 31
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 70


def _grid(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(part) for part in text.split(",") if part.strip())


def _parse_pin(text: str):
    """--pin 'diag=1,1;core=-1' -> (diagonal list, core list)."""
    diagonal: tuple[Fraction, ...] = ()
    core: tuple[Fraction, ...] = ()
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, value = chunk.partition("=")
        key = key.strip()
        if key == "diag":
            diagonal = _grid(value)
        elif key == "core":
            core = _grid(value)
        else:
            raise ParseError(0, f"unknown pin field {key!r} (use diag=..., core=...)")
    return diagonal, core


def _read_input(args) -> str:
    if args.poly is not None:
        return args.poly
    if args.from_file:
        with open(args.from_file, "r", encoding="utf-8") as fh:
            return fh.read().strip()
    raise ParseError(0, "no polynomial given (pass it as an argument or with --from-file)")


def _variables(args) -> list[str]:
    return [v.strip() for v in args.vars.split(",") if v.strip()]


def _add_input_args(sub):
    sub.add_argument("poly", nargs="?", help="polynomial expression")
    sub.add_argument("--from-file", help="read the polynomial expression from a file")
    sub.add_argument("--vars", default="x", help="ordered comma-separated variable names (default: x)")
    sub.add_argument("--output", choices=("text", "structured"), default="text")


def _add_search_args(sub):
    sub.add_argument(
        "--strategy",
        choices=("auto", "core_zero", "full_grid", "monte_carlo", "banded"),
        default="auto",
    )
    sub.add_argument("--diag-grid", type=_grid, default=DEFAULT_DIAGONAL_GRID,
                     help="comma-separated positive rationals")
    sub.add_argument("--core-grid", type=_grid, default=DEFAULT_CORE_GRID,
                     help="comma-separated rationals")
    sub.add_argument("--seed", type=int, default=1)
    sub.add_argument("--max-points", type=int, default=10**6)
    sub.add_argument("--pin", type=_parse_pin, default=None,
                     help="explicit assignment 'diag=a,b,...;core=c,d,...'")
    sub.add_argument("--out", help="also write the structured certificate to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratsos",
        description="Exact rational sum-of-squares certificates for polynomial nonnegativity.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    check = subs.add_parser("check", help="decide positive (semi)definiteness of a univariate input")
    _add_input_args(check)

    certify = subs.add_parser("certify", help="search for a rational SOS certificate")
    _add_input_args(certify)
    _add_search_args(certify)

    ver = subs.add_parser("verify", help="verify a structured certificate file against a polynomial")
    ver.add_argument("certificate", help="path to a structured certificate file")
    _add_input_args(ver)

    lift = subs.add_parser("lift", help="certify a multivariate input via project-and-lift")
    _add_input_args(lift)
    _add_search_args(lift)
    lift.add_argument("--trace", action="store_true", help="print the projection stages")

    return parser


def _report_json(report: DefinitenessReport) -> str:
    import json

    return json.dumps(
        {
            "classification": report.classification.value,
            "real_root_count": report.real_root_count,
            "witness": format_rational(report.witness) if report.witness is not None else None,
        },
        indent=2,
    )


def _print_report(report: DefinitenessReport, output: str):
    if output == "structured":
        print(_report_json(report))
        return
    print(f"classification: {report.classification.value}")
    print(f"real_root_count: {report.real_root_count}")
    if report.witness is not None:
        print(f"witness: p({format_rational(report.witness)}) < 0")


def cmd_check(args) -> int:
    variables = _variables(args)
    poly = parse_poly(_read_input(args), variables)
    if len(variables) != 1:
        print("check requires a univariate input", file=sys.stderr)
        return EXIT_USAGE
    from .positivity import classify

    report = classify(poly.to_unipoly())
    _print_report(report, args.output)
    if report.classification is Definiteness.POSITIVE_DEFINITE:
        return EXIT_OK
    if report.classification is Definiteness.POSITIVE_SEMIDEFINITE:
        return EXIT_PSD
    return EXIT_NOT_NONNEGATIVE


def _emit_certificate(cert: SosCertificate, poly, args, variables, input_text) -> int:
    if not verify(cert, poly):
        print("internal error: certificate failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    structured = render_certificate(
        cert, "structured", variables=variables, input_text=input_text, verified=True
    )
    if args.output == "structured":
        print(structured)
    else:
        print(render_certificate(cert, "text", variables=variables))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(structured + "\n")
    return EXIT_OK


def _run_certify(args, trace: bool = False) -> int:
    variables = _variables(args)
    text = _read_input(args)
    poly = parse_poly(text, variables)

    def config_for(strategy: str) -> SearchConfig:
        return SearchConfig(
            strategy=strategy,
            diagonal_grid=args.diag_grid,
            core_grid=args.core_grid,
            max_points=args.max_points,
            seed=args.seed,
        )

    if len(variables) == 1:
        result = certify_univariate(poly.to_unipoly(), config_for(args.strategy), pin=args.pin)
    else:
        # "auto" for multivariate inputs: core_zero first, then the full grid.
        stages = ("core_zero", "full_grid") if args.strategy == "auto" else (args.strategy,)
        result = None
        for stage in stages:
            out = certify_multivariate(poly, config_for(stage), pin=args.pin, return_trace=trace)
            if trace:
                result, power_map, projected, support = out
                print(f"power map: {list(power_map.exponents)}")
                print(f"projected: {format_unipoly(projected, 't')}")
                print(f"support: {list(support.powers)}")
            else:
                result = out
            if not isinstance(result, Exhausted):
                break

    if isinstance(result, SosCertificate):
        return _emit_certificate(result, poly if len(variables) > 1 else poly.to_unipoly(),
                                 args, variables, text)
    if isinstance(result, DefinitenessReport):
        _print_report(result, args.output)
        return EXIT_NOT_NONNEGATIVE
    if isinstance(result, InfeasibilityWitness):
        print(f"infeasible at exponent {result.exponent}: forced value {format_rational(result.forced_value)}")
        print(result.explanation)
        return EXIT_INFEASIBLE
    if isinstance(result, Exhausted):
        note = f" ({result.note})" if result.note else ""
        print(f"exhausted after {result.points_tested} points{note}")
        return EXIT_EXHAUSTED
    print(f"unexpected result {result!r}", file=sys.stderr)
    return EXIT_INTERNAL


def cmd_certify(args) -> int:
    return _run_certify(args)


def cmd_lift(args) -> int:
    return _run_certify(args, trace=args.trace)


def cmd_verify(args) -> int:
    variables = _variables(args)
    try:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            cert = parse_certificate(fh.read())
    except OSError as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    poly = parse_poly(_read_input(args), variables)
    cert_is_multivariate = any(isinstance(q, MultiPoly) for _, q in cert.terms)
    target = poly if cert_is_multivariate or len(variables) != 1 else poly.to_unipoly()
    if verify(cert, target):
        print("verified: exact")
        return EXIT_OK
    print("verification FAILED")
    return EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": cmd_check,
        "certify": cmd_certify,
        "verify": cmd_verify,
        "lift": cmd_lift,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
