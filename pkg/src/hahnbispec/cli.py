"""Command-line front end.

    hahnbispec verify [CHECK ...] --N 1 2 3 --draws 5 --seed 0
    hahnbispec emit matrix --op X --basis U --N 2 --alpha 1/2 --beta 1/3
    hahnbispec eval U --n 1 --x 0 --N 3 --alpha 1/2 --beta 1
    hahnbispec params --N 3 --alpha 1/2 --beta 1/3

Relative ``--out`` paths are resolved against ``$HAHNBISPEC_OUT_DIR`` when
that variable is set.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import algebra, bases
from .errors import HahnError
from .kernel import hyp_sum_terminating
from .params import Params
from .report import to_jsonable
from .suite import (
    CHECKS,
    EMIT_KINDS,
    ConfigError,
    SuiteConfig,
    coefficient_table,
    emit_object,
    render,
    report_document,
    run_suite,
)

OUT_DIR_ENV = "HAHNBISPEC_OUT_DIR"
DEFAULT_ALPHA = "1/3"
DEFAULT_BETA = "3/5"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _common(parser: argparse.ArgumentParser, multi_n: bool = False) -> None:
    if multi_n:
        parser.add_argument("--N", type=int, nargs="+", default=[1, 2, 3])
    else:
        parser.add_argument("--N", type=int, default=2)
    parser.add_argument("--alpha", type=_fraction, default=None)
    parser.add_argument("--beta", type=_fraction, default=None)
    parser.add_argument("--force", action="store_true", help="skip genericity validation")
    parser.add_argument("--out", default=None, help="output file (stdout if omitted)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hahnbispec", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("checks", nargs="*", default=[],
                   metavar="CHECK", help="subset of: " + ", ".join(CHECKS))
    _common(p, multi_n=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=3)
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times from the report")

    p = sub.add_parser("emit", help="write an exact object")
    p.add_argument("kind", choices=EMIT_KINDS)
    _common(p)
    p.add_argument("--op", default="X", help="X, Y, Z or calY")
    p.add_argument("--basis", default="delta", choices=("delta", "phi", "U"))
    p.add_argument("--closed", action="store_true", help="closed-form matrix instead of expansion")
    p.add_argument("--fn", default="U", choices=("U", "V", "phi"))
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--family", default="lambda", choices=("lambda", "nu", "mu", "xi"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=3)

    p = sub.add_parser("eval", help="evaluate U_n, V_n or phi_n at a rational point")
    p.add_argument("fn", choices=("U", "V", "phi"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_fraction, required=True)
    _common(p)

    p = sub.add_parser("params", help="print xi, lambda, nu and mu values")
    _common(p)
    return parser


def _params(args, N: int | None = None) -> Params:
    alpha = args.alpha if args.alpha is not None else Fraction(DEFAULT_ALPHA)
    beta = args.beta if args.beta is not None else Fraction(DEFAULT_BETA)
    return Params(alpha, beta, args.N if N is None else N, force=args.force)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _suite_config(args) -> SuiteConfig:
    explicit = []
    if args.alpha is not None or args.beta is not None:
        explicit = [(args.alpha if args.alpha is not None else Fraction(DEFAULT_ALPHA),
                     args.beta if args.beta is not None else Fraction(DEFAULT_BETA))]
    return SuiteConfig(
        N_list=list(args.N) if isinstance(args.N, list) else [args.N],
        param_draws=args.draws,
        explicit_params=explicit,
        seed=args.seed,
        force=args.force,
        output_path=args.out,
        format=args.format,
        checks=list(args.checks) if getattr(args, "checks", None) else None,
    )


def cmd_verify(args) -> int:
    result = run_suite(_suite_config(args))
    doc = report_document(result, timing=not args.no_timing)
    _write(render(doc, args.format), args.out)
    failed = [c for c in doc["checks"] if c["status"] != "pass"]
    print(f"{len(doc['checks']) - len(failed)}/{len(doc['checks'])} checks passed", file=sys.stderr)
    return 0 if result["all_passed"] else 1


def cmd_emit(args) -> int:
    if args.kind == "report":
        args.checks = None
        args.no_timing = False
        result = run_suite(_suite_config(args))
        _write(render(report_document(result), args.format), args.out)
        return 0 if result["all_passed"] else 1
    selector = {"op": args.op, "basis": args.basis, "closed": args.closed,
                "fn": args.fn, "n": args.n, "family": args.family}
    obj = emit_object(args.kind, selector, _params(args))
    _write(render(obj, args.format), args.out)
    return 0


def cmd_eval(args) -> int:
    p = _params(args)
    x0 = args.x
    if args.fn == "phi":
        value = bases.phi(args.n, p.alpha, p.N).fun(x0)
        out = {"value": value}
    elif args.fn == "U":
        value = bases.build_U_series(args.n, p).fun(x0)
        series = (bases.leading_coefficient(args.n, p) * hyp_sum_terminating(
            [-x0, -args.n, p.beta + args.n - p.N], [-p.N, p.alpha - x0], p.N))
        out = {"value": value, "series": series}
    else:
        value = bases.build_V(args.n, p).fun(x0)
        q = p.reflected()
        y = p.N - x0
        series = (bases.leading_coefficient(args.n, q) * hyp_sum_terminating(
            [-y, -args.n, q.beta + args.n - q.N], [-q.N, q.alpha - y], q.N))
        out = {"value": value, "series": series}
    _write(json.dumps(to_jsonable(out)) + "\n", args.out)
    return 0


def cmd_params(args) -> int:
    p = _params(args)
    doc = {"params": p.as_dict()}
    for family in ("xi", "lambda", "nu", "mu"):
        doc[family] = coefficient_table(family, p)
    doc["casimir"] = algebra.casimir_value(p)
    _write(render(doc, args.format), args.out)
    return 0


COMMANDS = {"verify": cmd_verify, "emit": cmd_emit, "eval": cmd_eval, "params": cmd_params}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, HahnError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
