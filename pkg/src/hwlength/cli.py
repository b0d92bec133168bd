"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 bad reduction / negative verdict,
3 internal or resource failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from .errors import InvalidInput, ResourceError, UnsupportedExtensionDegree
from .field import check_prime
from .geometry import cohomology_basis, good_reduction_check, hasse_witt_matrix, h_dimension
from .lengths import length_at_prime, validate_input
from .mpoly import DEFAULT_MEMORY_BUDGET, parse_poly
from .polyparse import default_variables
from .semilinear import classify, load_operator, quasilength, stable_rank
from .sweep import SweepConfig, run_sweep

EXIT_OK, EXIT_INVALID, EXIT_BAD, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("hwlength")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _variables(args) -> List[str]:
    if args.vars:
        return [v.strip() for v in args.vars.split(",") if v.strip()]
    return default_variables(args.poly)


def _poly(args):
    return parse_poly(args.poly, _variables(args))


def _exps_str(a, names) -> str:
    return "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(names, a) if e) or "1"


def cmd_length(args) -> int:
    g = _poly(args)
    report = length_at_prime(g, args.prime, emit_matrix=args.emit_matrix, budget=args.budget)
    _emit(report.to_dict())
    return EXIT_OK if report.valid else EXIT_BAD


def _parse_range(text: str):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise InvalidInput(f"--range must look like LO:HI, got {text!r}") from None
    return lo, hi


def cmd_sweep(args) -> int:
    lo, hi = _parse_range(args.range)
    cfg = SweepConfig(
        poly=args.poly, variables=_variables(args), lo=lo, hi=hi, jobs=args.jobs,
        out=args.out, fmt=args.format, include_bad=args.include_bad, budget=args.budget,
    )
    cfg.validate()
    try:
        _, summary = run_sweep(cfg)
    except OSError as exc:
        log.error("cannot write %s: %s", args.out, exc)
        return EXIT_INTERNAL
    _emit(summary.to_dict())
    return EXIT_OK


def cmd_hasse_witt(args) -> int:
    g = _poly(args)
    validate_input(g)
    names = _variables(args)
    verdict = good_reduction_check(g, args.prime)
    if not verdict.valid:
        if args.json:
            _emit({"prime": args.prime, "status": "Bad", "bad_reason": verdict.reason})
        else:
            print(f"Bad: {verdict.reason}")
        return EXIT_BAD
    hw = hasse_witt_matrix(verdict.hypersurface, budget=args.budget)
    if args.json:
        _emit({
            "prime": args.prime,
            "basis": [list(a) for a in hw.basis],
            "matrix": [list(r) for r in hw.matrix],
        })
        return EXIT_OK
    print(f"p = {args.prime}, basis of H^{verdict.hypersurface.n - 1}(Y, O_Y): {len(hw.basis)} monomials")
    for k, a in enumerate(hw.basis):
        print(f"  e{k}: 1/({_exps_str(a, names)})")
    width = max([len(str(x)) for r in hw.matrix for x in r] + [1])
    for row in hw.matrix:
        print("  [" + " ".join(str(x).rjust(width) for x in row) + "]")
    return EXIT_OK


def cmd_basis(args) -> int:
    basis = cohomology_basis(args.n, args.d)
    count = h_dimension(args.n, args.d)
    if args.json:
        _emit({"n": args.n, "d": args.d, "count": count, "monomials": [list(a) for a in basis]})
        return EXIT_OK
    if args.n + 1 <= 4:
        names = ["x", "y", "z", "w"][: args.n + 1]
    else:
        names = [f"x{i}" for i in range(args.n + 1)]
    for a in basis:
        print(_exps_str(a, names))
    print(f"binomial({args.d - 1}, {args.n}) = {count}")
    return EXIT_OK


def cmd_check(args) -> int:
    g = _poly(args)
    validate_input(g)
    verdict = good_reduction_check(g, args.prime)
    if args.json:
        _emit({"prime": args.prime, "status": "Valid" if verdict.valid else "Bad",
               "bad_reason": verdict.reason})
    else:
        print(str(verdict))
    return EXIT_OK if verdict.valid else EXIT_BAD


def cmd_semilinear(args) -> int:
    try:
        with open(args.matrix, encoding="utf-8") as fh:
            T = load_operator(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read {args.matrix}: {exc}") from None
    try:
        ql = quasilength(T)
    except UnsupportedExtensionDegree:
        ql = None
    out = {
        "p": T.field.p, "e": T.field.e, "dim": T.dim,
        "stable_rank": stable_rank(T), "quasilength": ql, "class": str(classify(T)),
    }
    if args.json:
        _emit(out)
    else:
        for k, v in out.items():
            print(f"{k:12s} {'n/a (e > 1)' if v is None else v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hwlength", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_args(p, prime=True):
        p.add_argument("--poly", required=True, help='e.g. "x^3 + y^3 + z^3"')
        p.add_argument("--vars", help="comma-separated variable names (default x,y,z,w or x0..xn)")
        if prime:
            p.add_argument("--prime", type=int, required=True)
        p.add_argument("--budget", type=int, default=DEFAULT_MEMORY_BUDGET,
                       help="cap on dense coefficients in g^(p-1)")

    p = sub.add_parser("length", help="D-module and unit F-module lengths at one prime")
    poly_args(p)
    p.add_argument("--emit-matrix", action="store_true", help="include the Hasse-Witt matrix")
    p.set_defaults(func=cmd_length)

    p = sub.add_parser("sweep", help="lengths over a range of primes")
    poly_args(p, prime=False)
    p.add_argument("--range", required=True, help="LO:HI, half-open")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write per-prime reports here")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--include-bad", action="store_true", help="also persist bad primes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hasse-witt", help="print the cohomology basis and Frobenius matrix")
    poly_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hasse_witt)

    p = sub.add_parser("basis", help="monomial basis of H^{n-1}(Y, O_Y)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("check", help="good-reduction verdict at one prime")
    poly_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("semilinear", help="stable rank and quasilength of a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_semilinear)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "prime", None) is not None:
        try:
            check_prime(args.prime)
        except InvalidInput as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - last-resort contract for scripts
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
