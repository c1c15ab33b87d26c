"""Command-line driver.

Subcommands: realize, surgery, cm-lattice, plumbing, alexander, verify.
Plain-text output by default, `--json` for machine output (schema id
"cm-realize/1").  Exit codes: 0 success, 1 usage or parse error, 2 internal
invariant violation, 3 typed domain error.

Environment: CM_REALIZE_BUDGET caps the lattice searches and
CM_REALIZE_WORKERS parallelizes the corpus scans.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import verify as verify_mod
from .changemaker import build_cm_lattice, standard_basis
from .errors import CmRealizeError, InternalError
from .exact import format_rational, parse_rational
from .knots import alexander, genus, parse_knot, surgery, torsion_coeffs
from .plumbing import (
    SeifertForm,
    epsilon,
    gram,
    is_quasi_alternating,
    star_plumbing,
)
from .realize import RealizationQuery, realize

SCHEMA = "cm-realize/1"


class _UsageError(Exception):
    """Malformed input text; maps to exit code 1."""


def _parse(fn, text):
    """Run a text parser, converting syntax-level DomainError to usage."""
    from .errors import DomainError

    try:
        return fn(text)
    except DomainError as exc:
        raise _UsageError(str(exc)) from exc


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_realize(args) -> int:
    y = _parse(SeifertForm.parse, args.sfs)
    slope = _parse(parse_rational, args.slope)
    result = realize(RealizationQuery(y, slope))
    lines = [f"Y = {y.text()}, slope {format_rational(slope)}"]
    if not result.knots:
        lines.append("no torus-knot or cable realizations")
    for k in result.knots:
        parts = [f"  {k.knot.text()}  genus {k.genus}"]
        if k.certificate is not None:
            parts.append(
                f"stable {list(k.certificate.stable)} type {k.certificate.vertex_type.tag}"
            )
        lines.append("  ".join(parts))
    _emit(result.to_json(), args.json, lines)
    return 0


def _cmd_surgery(args) -> int:
    knot = _parse(parse_knot, args.knot)
    slope = _parse(parse_rational, args.slope)
    res = surgery(knot, slope)
    payload = {
        "knot": knot.text(),
        "slope": format_rational(slope),
        "raw": res.raw_text(),
        "normalized": res.normalized.text(),
        "reversed": res.reversed,
    }
    lines = [
        f"raw: {res.raw_text()}",
        f"normalized: {res.normalized.text()}" + ("  (orientation reversed)" if res.reversed else ""),
    ]
    _emit(payload, args.json, lines)
    return 0


def _cmd_cm_lattice(args) -> int:
    slope = _parse(parse_rational, args.slope)
    try:
        stable = tuple(int(x) for x in args.stable.split(",")) if args.stable else ()
    except ValueError as exc:
        raise _UsageError(f"bad stable list: {args.stable!r}") from exc
    lat = build_cm_lattice(slope, stable)
    payload = lat.to_json()
    lines = [
        f"slope {format_rational(slope)}  sigma {list(lat.sigma.sigma)}  "
        f"ambient rank {lat.ambient_rank}  lattice rank {lat.rank}"
    ]
    for i, w in enumerate(lat.w):
        lines.append(f"  w{i} = {list(w)}")
    if args.standard_basis or args.gram:
        sb = standard_basis(lat)
        if args.standard_basis:
            payload["standard_basis"] = sb.to_json()
            for v, f in zip(sb.nu, sb.nu_flags):
                tag = " tight" if f.tight else (" gapless" if f.gapless else "")
                lines.append(f"  nu  {list(v)}{tag}")
            for v in sb.mu:
                lines.append(f"  mu  {list(v)}")
        if args.gram:
            g = sb.gram()
            payload["gram"] = g.to_json()
            lines.append(f"  gram ({g.rank}x{g.rank}):")
            for row in g.gram:
                lines.append(f"    {list(row)}")
    _emit(payload, args.json, lines)
    return 0


def _cmd_plumbing(args) -> int:
    y = _parse(SeifertForm.parse, args.sfs)
    p = star_plumbing(y)
    g = gram(p)
    payload = {
        "sfs": y.text(),
        "plumbing": p.to_json(),
        "epsilon": format_rational(epsilon(y)),
        "quasi_alternating": is_quasi_alternating(y),
        "gram": g.to_json(),
        "determinant": g.determinant(),
    }
    lines = [
        f"center {p.central_weight}, arms {[list(a) for a in p.arms]}",
        f"epsilon {format_rational(epsilon(y))}, det {g.determinant()}, "
        f"quasi-alternating {is_quasi_alternating(y)}",
    ]
    _emit(payload, args.json, lines)
    return 0


def _cmd_alexander(args) -> int:
    knot = _parse(parse_knot, args.knot)
    poly = alexander(knot)
    torsion = torsion_coeffs(poly)
    payload = {
        "knot": knot.text(),
        "alexander": poly.to_json(),
        "genus": genus(knot),
        "torsion": list(torsion),
    }
    lines = [
        f"{knot.text()}: genus {genus(knot)}",
        f"symmetric coefficients {list(poly.coeffs)}",
        f"torsion {list(torsion)}",
    ]
    _emit(payload, args.json, lines)
    return 0


def _cmd_verify(args) -> int:
    canonical = verify_mod.SUITE_ALIASES.get(args.suite, args.suite)
    if canonical not in verify_mod.SUITES:
        raise _UsageError(f"unknown suite {args.suite!r}; known: {sorted(verify_mod.SUITES)}")
    report = verify_mod.run_suite(args.suite, bound=args.bound, seed=args.seed)
    payload = report.to_json()
    lines = [
        f"{report.name}: {'pass' if report.passed else 'FAIL'} "
        f"({report.checked} checked; {report.details})"
    ]
    if not report.passed:
        lines.append(f"counterexample: {report.counterexample}")
    _emit(payload, args.json, lines)
    return 0 if report.passed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cm-realize",
        description="Decide which torus knots or cables realize a small Seifert "
        "fibered space by non-integer surgery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="enumerate and certify realizations")
    p.add_argument("--sfs", required=True, help='e.g. "2;13/5,5/3,3/1"')
    p.add_argument("--slope", required=True, help='e.g. "-133/2"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_realize)

    p = sub.add_parser("surgery", help="Seifert form of a surgery on a knot")
    p.add_argument("--knot", required=True, help='"T(r,s)", "T(-r,s)" or "C(a,b);T(r,s)"')
    p.add_argument("--slope", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_surgery)

    p = sub.add_parser("cm-lattice", help="build a changemaker lattice")
    p.add_argument("--slope", required=True)
    p.add_argument("--stable", default="", help='comma list, e.g. "2,3,5,5"')
    p.add_argument("--standard-basis", action="store_true")
    p.add_argument("--gram", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_cm_lattice)

    p = sub.add_parser("plumbing", help="star plumbing and Gram form of a space")
    p.add_argument("--sfs", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_plumbing)

    p = sub.add_parser("alexander", help="Alexander polynomial, genus, torsion")
    p.add_argument("--knot", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_alexander)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, help=", ".join(sorted(verify_mod.SUITES)))
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # join value-taking flags with negative rational values ("--slope -133/2")
    joined = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--slope",) and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            joined.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            joined.append(tok)
            i += 1
    try:
        args = parser.parse_args(joined)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except CmRealizeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
