"""
Command-line interface.

Exit codes: 0 success, 1 domain rejection (e.g. u not in S_D), 2 usage
error, 3 a theorem-level identity failed (should never happen).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import List, Optional

from .classmap import classify
from .eisenstein import EisensteinInt, cubic_symbol, cubic_symbol_oracle
from .qform import DEFAULT_SEARCH_BOUND, QuadForm, class_group, compose, h2_marker
from .residuacity import TheoremViolation
from .sdelem import InvalidElement, validate
from .sweeps import lemma_sweep, random_tuples, theorem11_sweep, theorem24_sweep

EXIT_OK, EXIT_REJECTED, EXIT_USAGE, EXIT_CONTRADICTION = 0, 1, 2, 3

# oracle cross-check in `symbol` only for denominators this small
SYMBOL_CROSSCHECK_NORM = 10**8

log = logging.getLogger("cubres")


class UsageError(Exception):
    pass


def _default_prime_limit() -> int:
    env = os.environ.get("CUBRES_PRIME_LIMIT")
    if env is None:
        return 100_000
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"CUBRES_PRIME_LIMIT must be an integer, got {env!r}")
    if value <= 0:
        raise UsageError("CUBRES_PRIME_LIMIT must be positive")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime-limit", type=_positive, default=None,
                        help="largest prime scanned (default 100000 or $CUBRES_PRIME_LIMIT)")
    common.add_argument("--samples", type=int, default=5,
                        help="primes sampled per class by classify (default 5)")
    common.add_argument("--search-bound", type=_positive, default=DEFAULT_SEARCH_BOUND,
                        help="box size for equivalent-form searches (default 50)")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="cubres",
        description="Cubic residuacity of A + B sqrt(D) and the form class group H(4d).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check u = A + B sqrt(D)")
    _add_u(p)
    p = sub.add_parser("class-group", parents=[common], help="list reduced forms of H(4d)")
    p.add_argument("d", type=int)
    p = sub.add_parser("classify", parents=[common], help="J, H2 and kernel for u")
    _add_u(p)
    p = sub.add_parser("verify", parents=[common], help="run the consistency sweeps for u")
    _add_u(p)
    p.add_argument("--tuples", type=_positive, default=1000,
                   help="random (f, x, y) tuples for the L = R and substitution sweeps")
    p = sub.add_parser("symbol", parents=[common], help="cubic residue symbol (alpha/beta)_3")
    p.add_argument("numerator", help="c0+c1w")
    p.add_argument("denominator", help="c0+c1w")
    p = sub.add_parser("compose", parents=[common], help="compose two forms [a,2b,c]")
    p.add_argument("form1")
    p.add_argument("form2")
    return parser


def _add_u(p: argparse.ArgumentParser) -> None:
    p.add_argument("A", type=int)
    p.add_argument("B", type=int)
    p.add_argument("D", type=int)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _csv(rows: List[List[object]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_validate(args) -> int:
    try:
        u = validate(args.A, args.B, args.D)
    except InvalidElement as e:
        if args.format == "json":
            _emit(json.dumps({"A": e.A, "B": e.B, "D": e.D, "valid": False,
                              "violations": e.violations}))
        elif args.format == "csv":
            _emit(_csv([["A", "B", "D", "valid", "violations"],
                        [e.A, e.B, e.D, 0, ";".join(e.violations)]]))
        else:
            _emit(f"{e.A}+{e.B}*sqrt({e.D}) is not in S_D")
            for v in e.violations:
                _emit(f"  {v}")
        return EXIT_REJECTED
    data = u.to_dict()
    if args.format == "json":
        _emit(json.dumps(dict(data, valid=True)))
    elif args.format == "csv":
        _emit(_csv([list(data), list(data.values())]))
    else:
        _emit(f"u = {u}")
        for key, value in data.items():
            _emit(f"  {key:<10} {value}")
    return EXIT_OK


def cmd_class_group(args) -> int:
    if args.d >= 0:
        raise UsageError("class-group expects d < 0")
    group = class_group(args.d)
    rows = []
    for f in group:
        marker = h2_marker(f) if args.d % 3 == 0 else None
        rows.append((f, marker))
    if args.format == "json":
        _emit(json.dumps({
            "d": args.d,
            "class_count": len(group),
            "classes": [{"form": str(f), "h2_marker": m} for f, m in rows],
        }))
    elif args.format == "csv":
        _emit(_csv([["form", "h2_marker"]] + [[str(f), "" if m is None else m] for f, m in rows]))
    else:
        _emit(f"H({4 * args.d}): {len(group)} classes")
        for f, m in rows:
            _emit(f"{str(f):<24} {'-' if m is None else m}")
    return EXIT_OK


def _prime_limit(args) -> int:
    return args.prime_limit if args.prime_limit is not None else _default_prime_limit()


def cmd_classify(args) -> int:
    try:
        u = validate(args.A, args.B, args.D)
    except InvalidElement as e:
        _emit(str(e))
        return EXIT_REJECTED
    report = classify(u, _prime_limit(args), args.samples, args.search_bound)
    if args.format == "json":
        _emit(json.dumps(report.to_dict()))
    elif args.format == "csv":
        _emit(report.to_csv())
    else:
        _emit(report.to_text())
    return EXIT_OK if report.consistent() else EXIT_CONTRADICTION


def cmd_verify(args) -> int:
    try:
        u = validate(args.A, args.B, args.D)
    except InvalidElement as e:
        _emit(str(e))
        return EXIT_REJECTED
    limit = _prime_limit(args)
    results = [theorem11_sweep(u, limit, args.search_bound)]
    tuples = random_tuples([u], args.tuples, seed=args.seed)
    results.append(theorem24_sweep(tuples))
    results.append(lemma_sweep(tuples))
    total = sum(r.checks for r in results)
    failures = sum(r.failures for r in results)
    if args.format == "json":
        _emit(json.dumps({"u": u.to_dict(), "prime_limit": limit,
                          "sweeps": [r.to_dict() for r in results],
                          "checks": total, "failures": failures}))
    elif args.format == "csv":
        _emit(_csv([["sweep", "checks", "failures", "skipped"]]
                   + [[r.name, r.checks, r.failures, r.skipped] for r in results]))
    else:
        for r in results:
            _emit(r.summary())
        _emit(f"{total} checks, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_CONTRADICTION


def cmd_symbol(args) -> int:
    try:
        alpha = EisensteinInt.parse(args.numerator)
        beta = EisensteinInt.parse(args.denominator)
    except ValueError as e:
        raise UsageError(str(e))
    try:
        value = cubic_symbol(alpha, beta)
    except ValueError as e:
        raise UsageError(str(e))
    checked = beta.norm() <= SYMBOL_CROSSCHECK_NORM
    if checked:
        expected = cubic_symbol_oracle(alpha, beta)
        if expected != value:
            raise TheoremViolation("fast symbol disagrees with the oracle",
                                   alpha=alpha, beta=beta, fast=value, oracle=expected)
    if args.format == "json":
        _emit(json.dumps({"numerator": str(alpha), "denominator": str(beta),
                          "symbol": str(value), "oracle_checked": checked}))
    elif args.format == "csv":
        _emit(_csv([["numerator", "denominator", "symbol"], [str(alpha), str(beta), str(value)]]))
    else:
        _emit(str(value))
    return EXIT_OK


def cmd_compose(args) -> int:
    try:
        f1, f2 = QuadForm.parse(args.form1), QuadForm.parse(args.form2)
    except ValueError as e:
        raise UsageError(str(e))
    for f in (f1, f2):
        if not (f.is_positive_definite() and f.is_primitive()):
            raise UsageError(f"{f} is not a primitive positive definite form")
    if f1.disc != f2.disc:
        raise UsageError(f"discriminants differ: {f1.disc} vs {f2.disc}")
    f3 = compose(f1, f2, args.search_bound)
    if args.format == "json":
        _emit(json.dumps({"form1": str(f1), "form2": str(f2), "product": str(f3), "d": f3.disc}))
    elif args.format == "csv":
        _emit(_csv([["form1", "form2", "product"], [str(f1), str(f2), str(f3)]]))
    else:
        _emit(str(f3))
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "class-group": cmd_class_group,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "symbol": cmd_symbol,
    "compose": cmd_compose,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        parser.exit(EXIT_USAGE, f"cubres {args.command}: error: {e}\n")
    except TheoremViolation as e:
        sys.stderr.write(f"THEOREM CONTRADICTION: {e}\n")
        return EXIT_CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())
