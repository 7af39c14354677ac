"""Built-in example functions and the data files plotted from them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .continuous import envelope
from .exact import QuadraticValue, as_fraction, format_decimal, scalar_compare
from .stepfn import RealInterval, StepFunction, make_indicator

BUILTINS = ("two-bumps", "plateau", "four-bumps", "zero")
# older names kept so existing command lines keep working
ALIASES = {"example-1-6": "two-bumps", "example-1-8": "plateau", "figure-3": "four-bumps"}


def resolve(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in BUILTINS:
        raise ValueError(f"unknown builtin {name!r}; expected one of {BUILTINS}")
    return name


def two_bumps(c) -> StepFunction:
    c = as_fraction(c)
    if not 1 < c < 3:
        raise ValueError(f"parameter c must lie in (1, 3), got {c}")
    return make_indicator([(-c, -1), (1, c)])


def plateau_between_bumps(h=Fraction(2, 5)) -> StepFunction:
    h = as_fraction(h)
    return make_indicator([(Fraction(-3, 2), -1), (1, Fraction(3, 2))]) + make_indicator(
        [(Fraction(-1, 2), Fraction(1, 2))], h
    )


def four_bumps() -> StepFunction:
    return make_indicator(
        [(Fraction(-5, 2), -2), (Fraction(-3, 2), -1), (1, 2), (3, Fraction(7, 2))]
    )


def builtin(name: str, c=Fraction(3, 2)) -> StepFunction:
    name = resolve(name)
    if name == "two-bumps":
        return two_bumps(c)
    if name == "plateau":
        return plateau_between_bumps()
    if name == "four-bumps":
        return four_bumps()
    return StepFunction.constant(0)


@dataclass(frozen=True)
class Curve:
    filename: str
    operator: str | None  # None plots f itself


@dataclass(frozen=True)
class FigureSpec:
    function: StepFunction
    interval: RealInterval
    samples: int
    curves: tuple

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("sample count must be at least 2")
        if not self.interval.bounded or self.interval.is_point:
            raise ValueError("figure interval must be bounded with positive length")


def figure_spec(name: str, c=Fraction(3, 2), samples: int = 201, interval=None) -> FigureSpec:
    name = resolve(name)
    f = builtin(name, c)
    if name == "two-bumps":
        c = as_fraction(c)
        default = RealInterval.closed(-c - 1, c + 1)
        curves = (Curve("data_twot_f.dat", None), Curve("data_twot_Mf.dat", "M"))
    elif name == "plateau":
        default = RealInterval.closed(-2, 2)
        curves = (Curve("data_muchvar_f.dat", None), Curve("data_muchvar_Mf.dat", "M"))
    elif name == "four-bumps":
        default = RealInterval.closed(0, 1)
        curves = (
            Curve("data_defp_f.dat", None),
            Curve("data_defp_Mnotf.dat", "M0"),
            Curve("data_defp_Msupf.dat", "M1"),
            Curve("data_defp_Mf.dat", "M"),
        )
    else:
        default = RealInterval.closed(-1, 1)
        curves = (Curve("data_zero_f.dat", None), Curve("data_zero_Mf.dat", "M"))
    return FigureSpec(f, interval or default, samples, curves)


def file_figure_spec(f: StepFunction, stem: str, interval: RealInterval, samples: int = 201) -> FigureSpec:
    curves = (Curve(f"{stem}_f.dat", None), Curve(f"{stem}_Mf.dat", "M"))
    return FigureSpec(f, interval, samples, curves)


def _sort_unique(xs):
    out = []
    for x in sorted(xs, key=_Key):
        if not out or out[-1] != x:
            out.append(x)
    return out


class _Key:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return scalar_compare(self.x, other.x) < 0


def curve_rows(spec: FigureSpec, curve: Curve) -> list[tuple]:
    """Exact ``(x, y)`` rows: a uniform grid plus every breakpoint in range."""
    iv = spec.interval
    f = spec.function
    lo, hi = iv.lo, iv.hi
    xs = [lo + (hi - lo) * Fraction(i, spec.samples - 1) for i in range(spec.samples)]
    xs += [b for b in f.breakpoints if lo <= b <= hi]
    if curve.operator is None:
        return [(x, f(x)) for x in _sort_unique(xs)]
    a = 1
    env = envelope(f, iv, curve.operator, a)
    xs += [p.lo for p in env.pieces if p.lo is not None]
    xs += [p.hi for p in env.pieces if p.hi is not None]
    xs = [x.simplify() if isinstance(x, QuadraticValue) else x for x in xs]
    return [(x, env(x)) for x in _sort_unique(xs)]


def format_rows(rows, exact: bool = False) -> str:
    if exact:
        return "".join(f"{x} {y}\n" for x, y in rows)
    return "".join(f"{format_decimal(x)} {format_decimal(y)}\n" for x, y in rows)


def write_figure(spec: FigureSpec, out_dir: str, exact: bool = False) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for curve in spec.curves:
        path = os.path.join(out_dir, curve.filename)
        with open(path, "w") as fh:
            fh.write(format_rows(curve_rows(spec, curve), exact))
        written.append(path)
    return written
