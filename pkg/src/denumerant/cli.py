"""Command line interface.

Exit codes: 0 success, 1 audit or cross-check failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .audit import run_audit
from .core import (
    InvalidTuple,
    make_spec,
    oracle_count,
    partition_box_product,
    partition_from_f,
    polynomial_part,
    quasipolynomial,
)
from .cyclotomic import CyclotomicNumber, LevelError, NotRational, descend
from .exact import format_rational
from .frobenius import GcdNotOne, frobenius_bound, frobenius_number
from .pfd import BadIndex, IndexOutOfRange, pfd_coefficients, rademacher_table
from .waves import (
    MODES,
    AuditError,
    NotAWaveIndex,
    NotPairwiseCoprime,
    multiplicity,
    primitive_exponents,
    root_order,
    root_polynomial_part_at,
    wave_eval,
    wave_indices,
)

METHODS = ("oracle", "box-product", "from-f", "quasipoly")


class UsageError(Exception):
    pass


def parse_tuple(text: str) -> tuple[int, ...]:
    try:
        a = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not a or any(x < 1 for x in a):
        raise argparse.ArgumentTypeError(f"entries must be positive integers: {text!r}")
    return a


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


# -- output normalization ---------------------------------------------------
# Values are computed at level D but reported at level lcm(a), so outputs do
# not depend on the period override.

def _cyc_json(x: CyclotomicNumber, level: int) -> dict:
    return descend(x, level).to_json()


def _root_json(spec, t: int) -> dict:
    step = spec.D // spec.lcm
    return {"level": spec.lcm, "power": t // step}


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


# -- commands ---------------------------------------------------------------

def _spec(args):
    return make_spec(args.a, args.period)


def cmd_count(args) -> int:
    spec = _spec(args)
    n = args.n
    values = {
        "oracle": lambda: oracle_count(spec, n),
        "box-product": lambda: partition_box_product(spec, n),
        "from-f": lambda: partition_from_f(spec, n),
        "quasipoly": lambda: int(quasipolynomial(spec)(n)),
    }
    if not args.all_methods:
        value = values[args.method]()
        if args.json:
            _emit({"a": list(spec.a), "n": n, "method": args.method, "value": value})
        else:
            print(value)
        return 0
    results = {m: values[m]() for m in METHODS}
    agree = len(set(results.values())) == 1
    if args.json:
        _emit({"a": list(spec.a), "n": n, "values": results, "agree": agree})
    else:
        for m in METHODS:
            print(f"{m:<10} {results[m]}")
        print("agree" if agree else "MISMATCH")
    return 0 if agree else 1


def cmd_quasipoly(args) -> int:
    spec = _spec(args)
    qp = quasipolynomial(spec).fold(spec.lcm)
    _emit({
        "a": list(spec.a),
        "period": qp.period,
        "coefficients": [[format_rational(c) for c in row] for row in qp.coeffs],
        "polynomial_part": [format_rational(c) for c in polynomial_part(spec)],
    })
    return 0


def cmd_waves(args) -> int:
    spec = _spec(args)
    L = spec.lcm
    out = []
    for j in wave_indices(spec):
        exps = [spec.D // j] if args.mode == "single" else primitive_exponents(spec, j)
        entry = {
            "j": j,
            "multiplicity": multiplicity(spec, j),
            "roots": [
                {
                    "root": _root_json(spec, t),
                    "polynomial": [_cyc_json(c, L) for c in root_polynomial_part_at(spec, t)],
                }
                for t in exps
            ],
        }
        if args.at is not None:
            value = wave_eval(spec, j, args.at, args.mode)
            entry["value"] = (
                format_rational(value) if args.mode == "sylvester" else _cyc_json(value, L)
            )
        out.append(entry)
    _emit({"a": list(spec.a), "mode": args.mode, "at": args.at, "waves": out})
    return 0


def cmd_pfd(args) -> int:
    spec = _spec(args)
    table = pfd_coefficients(spec)
    L = spec.lcm
    rows = []
    for t, coeffs in sorted(table.entries.items()):
        for ell, c in enumerate(coeffs, start=1):
            rows.append({
                "root": _root_json(spec, t),
                "order": ell,
                "coefficient": _cyc_json(c, L),
                "convention": "lambda-minus-z",
            })
    _emit(rows)
    return 0


def cmd_rademacher(args) -> int:
    r = args.r
    spec = make_spec(range(1, r + 1), args.period)
    rows = []
    for row in rademacher_table(r, args.period):
        value = descend(row["value"], spec.lcm)
        rows.append({
            "h": row["h"],
            "k": row["k"],
            "order": row["order"],
            "value": value.to_json(),
            "rational": format_rational(value.as_rational()) if value.is_rational() else None,
            "convention": "z-minus-omega",
        })
    _emit({"r": r, "coefficients": rows})
    return 0


def cmd_frobenius(args) -> int:
    spec = _spec(args)
    _emit({"bound": frobenius_bound(spec), "frobenius": frobenius_number(spec)})
    return 0


def cmd_verify(args) -> int:
    spec = _spec(args)
    results = run_audit(spec, args.nmax)
    ok = all(r.passed for r in results)
    if args.json:
        _emit({"a": list(spec.a), "D": spec.D, "nmax": args.nmax, "passed": ok,
               "checks": [r.to_json() for r in results]})
    else:
        for r in results:
            status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
            line = f"{status}  {r.name}"
            if r.detail:
                line += f"  ({r.detail})"
            print(line)
        print("all checks passed" if ok else "verification FAILED")
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False),
                   help="machine-readable output for count and verify")
    p.add_argument("--period", type=_positive, default=d(None), metavar="P",
                   help="use the common multiple P of the entries as the period")
    p.add_argument("--nmax", type=_nonneg, default=d(200), metavar="N",
                   help="largest n checked by verify (default 200)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denumerant",
        description="Exact restricted partition function, waves, partial fractions.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        _add_common(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "p_a(n)")
    p.add_argument("-a", type=parse_tuple, required=True, help="e.g. 2,3,5")
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("--method", choices=METHODS, default="oracle")
    p.add_argument("--all-methods", action="store_true")

    p = add("quasipoly", cmd_quasipoly, "quasi-polynomial coefficient table")
    p.add_argument("-a", type=parse_tuple, required=True)

    p = add("waves", cmd_waves, "Sylvester waves")
    p.add_argument("-a", type=parse_tuple, required=True)
    p.add_argument("--mode", choices=MODES, default="sylvester")
    p.add_argument("--at", type=_nonneg, default=None, metavar="N",
                   help="also evaluate each wave at n=N")

    p = add("pfd", cmd_pfd, "partial fraction coefficients")
    p.add_argument("-a", type=parse_tuple, required=True)

    p = add("rademacher", cmd_rademacher, "Rademacher coefficients for (1, ..., r)")
    p.add_argument("-r", type=_positive, required=True)

    p = add("frobenius", cmd_frobenius, "Frobenius number and bound")
    p.add_argument("-a", type=parse_tuple, required=True)

    p = add("verify", cmd_verify, "cross-formula audit")
    p.add_argument("-a", type=parse_tuple, required=True)
    return parser


USAGE_ERRORS = (InvalidTuple, GcdNotOne, BadIndex, IndexOutOfRange, NotAWaveIndex,
                NotPairwiseCoprime, LevelError)
AUDIT_ERRORS = (AuditError, NotRational)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AUDIT_ERRORS as exc:
        print(f"audit failure: {exc}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
