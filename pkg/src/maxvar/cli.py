"""Command-line front end.

Exit codes: 0 success, 1 verified violation, 2 undecided comparison
(precision exhausted), 3 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import discrete, figures, verify
from .continuous import OPERATORS, evaluate, variation_of
from .discrete import DiscreteInterval, LatticeFunction
from .exact import PrecisionExhausted, format_fraction, parse_scalar
from .stepfn import RealInterval, StepFunction, variation

EXIT_OK, EXIT_VIOLATION, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _load(args):
    """The function named by --builtin or --file."""
    if args.builtin and args.file:
        raise UsageError("give either --builtin or --file, not both")
    if args.builtin:
        return figures.builtin(args.builtin, args.c)
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
        if ";" in text:
            return LatticeFunction.from_text(text)
        return StepFunction.from_text(text)
    raise UsageError("a function is required: use --builtin NAME or --file PATH")


def _show(x, exact: bool = True) -> str:
    if isinstance(x, Fraction):
        return format_fraction(x)
    return str(x)


def cmd_eval(args) -> int:
    f = _load(args)
    x = parse_scalar(args.x)
    if isinstance(f, LatticeFunction):
        if args.operator == "M":
            value = discrete.discrete_mf(f, x)
        elif args.operator == "M0":
            value = discrete.discrete_m0(f, x, args.a)
        else:
            value = discrete.discrete_m1(f, x, args.a)
    else:
        value = evaluate(f, x, args.operator, args.a)
    print(_show(value))
    return EXIT_OK


def cmd_var(args) -> int:
    f = _load(args)
    if isinstance(f, LatticeFunction):
        if args.interval:
            lo, hi = _discrete_bounds(args.interval)
            iv = DiscreteInterval(lo, hi)
        else:
            iv = DiscreteInterval.whole()
        if args.of == "f":
            print(format_fraction(discrete.discrete_var(f, iv)))
        elif args.of == "Mf" and iv == DiscreteInterval.whole():
            print(format_fraction(discrete.discrete_var_mf(f)))
        else:
            raise UsageError("for lattice functions only --of f, or --of Mf over all of Z, is supported")
        return EXIT_OK
    iv = RealInterval.parse(args.interval) if args.interval else RealInterval.real_line()
    if args.of == "f":
        print(format_fraction(variation(f, iv)))
    else:
        operator = {"Mf": "M", "M0f": "M0", "M1f": "M1"}[args.of]
        print(variation_of(f, iv, operator, args.a))
    return EXIT_OK


def _discrete_bounds(text: str):
    iv = RealInterval.parse(text)
    return iv.lo, iv.hi


def cmd_verify(args) -> int:
    if args.suite == "sweep":
        summary = verify.exhaustive_discrete_sweep(args.N)
    elif args.suite == "continuous":
        summary = verify.suite_continuous(args.count, args.seed)
    elif args.suite == "discrete":
        summary = verify.suite_discrete(args.count, args.seed)
    else:
        summary = verify.suite_lemmas(args.count, args.seed)
    print(summary.to_record() if args.json else summary.line())
    if summary.violations or summary.incoherent:
        for w in summary.witnesses:
            print(f"witness: {w}", file=sys.stderr)
        return EXIT_VIOLATION
    if summary.undecided:
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_figure(args) -> int:
    interval = RealInterval.parse(args.interval) if args.interval else None
    if args.builtin:
        spec = figures.figure_spec(args.builtin, args.c, args.samples, interval)
    else:
        f = _load(args)
        if not isinstance(f, StepFunction):
            raise UsageError("figures are drawn for step functions only")
        stem = os.path.splitext(os.path.basename(args.file))[0]
        spec = figures.file_figure_spec(f, stem, interval or RealInterval.closed(-1, 1), args.samples)
    for path in figures.write_figure(spec, args.out, args.exact):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maxvar", description="Exact maximal functions of step functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def function_args(p):
        p.add_argument("--builtin", choices=figures.BUILTINS + tuple(figures.ALIASES), metavar="NAME",
                       help=f"one of {', '.join(figures.BUILTINS)}")
        p.add_argument("--c", type=_fraction, default=Fraction(3, 2), help="parameter of two-bumps, in (1, 3)")
        p.add_argument("--file", help="step function or lattice function text file")

    p = sub.add_parser("eval", help="evaluate Mf, M0f or M1f at a point")
    function_args(p)
    p.add_argument("--x", required=True, help="rational 'p/q' or 'p + q*sqrt(d)'")
    p.add_argument("--operator", choices=OPERATORS, default="M")
    p.add_argument("--a", type=_fraction, default=Fraction(1))
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("var", help="exact variation of f or of a maximal function")
    function_args(p)
    p.add_argument("--interval", help="e.g. '[-1,1]', '(-inf,2]' or 'R'")
    p.add_argument("--of", choices=("f", "Mf", "M0f", "M1f"), default="Mf")
    p.add_argument("--a", type=_fraction, default=Fraction(1))
    p.set_defaults(run=cmd_var)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("continuous", "discrete", "lemmas", "sweep"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--json", action="store_true", help="print the summary as a JSON record")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("figure", help="write figure data files")
    function_args(p)
    p.add_argument("--interval")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--out", default=".")
    p.add_argument("--exact", action="store_true", help="print exact values instead of decimals")
    p.set_defaults(run=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except PrecisionExhausted as exc:
        print(f"maxvar: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (UsageError, ValueError, OSError) as exc:
        print(f"maxvar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
