"""The centred maximal function of step functions, computed exactly.

For a step function f the average over ``[x - r, x + r]`` is, for fixed x
and between consecutive radii ``|x - y|`` (y a breakpoint), of the form
``A + B/r`` and hence monotone in r.  So the supremum over r is a maximum
over finitely many candidate radii plus the limits ``r -> 0`` and
``r -> infinity``.  As x moves, each candidate radius gives a window
average that is piecewise linear-fractional in x; the maximal function on an
interval is the upper envelope of those pieces.

The restricted operators ``M0`` (radii ``r <= a + x``) and ``M1`` (radii
``r >= a + x``) are handled by the same machinery, with the extra candidate
radius ``a + x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact import (
    AlgebraicSum,
    PrecisionExhausted,
    QuadraticValue,
    as_fraction,
    scalar_compare,
    scalar_sign,
    solve_quadratic,
)
from .stepfn import RealInterval, StepFunction

OPERATORS = ("M", "M0", "M1")


# ---------------------------------------------------------------------------
# linear-fractional functions
# ---------------------------------------------------------------------------

class Mobius:
    """The function ``x -> (a + b*x) / (c + d*x)`` in a normalized form.

    Constants are stored as ``(v, 0, 1, 0)``; otherwise the leading
    nonzero coefficient of the denominator (d, then c) is scaled to 1.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = (as_fraction(t) for t in (a, b, c, d))
        if c == 0 and d == 0:
            raise ZeroDivisionError("Mobius denominator is identically zero")
        if b * c == a * d:
            v = a / c if c != 0 else b / d
            a, b, c, d = v, Fraction(0), Fraction(1), Fraction(0)
        elif d != 0:
            a, b, c, d = a / d, b / d, c / d, Fraction(1)
        else:
            a, b, c, d = a / c, b / c, Fraction(1), Fraction(0)
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def constant(cls, value) -> "Mobius":
        return cls(value, 0, 1, 0)

    @property
    def is_constant(self) -> bool:
        return self.b == 0 and self.d == 0

    @property
    def direction(self) -> int:
        """Sign of the derivative wherever the function is defined."""
        s = self.b * self.c - self.a * self.d
        return (s > 0) - (s < 0)

    def key(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __call__(self, x):
        if self.is_constant:
            return self.a
        den = self.c + self.d * x
        if den == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        out = (self.a + self.b * x) / den
        return out.simplify() if isinstance(out, QuadraticValue) else out

    def limit_at_infinity(self) -> Fraction:
        """Common limit at +infinity and -infinity (the function is bounded)."""
        if self.is_constant:
            return self.a
        if self.d == 0:
            raise ValueError(f"{self} is unbounded at infinity")
        return self.b / self.d

    def limit(self, x) -> Fraction | QuadraticValue:
        """Value at a finite point, or the limit at infinity for ``None``."""
        return self.limit_at_infinity() if x is None else self(x)

    def difference_poly(self, other: "Mobius") -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients of ``(a1 + b1 x)(c2 + d2 x) - (a2 + b2 x)(c1 + d1 x)``."""
        A = self.b * other.d - other.b * self.d
        B = self.a * other.d + self.b * other.c - other.a * self.d - other.b * self.c
        C = self.a * other.c - other.a * self.c
        return A, B, C

    def solve_equal(self, value) -> Fraction | None:
        """The unique x with ``self(x) == value``, for a nonconstant function."""
        den = self.b - value * self.d
        if den == 0:
            return None
        return (value * self.c - self.a) / den

    def __repr__(self):
        return f"Mobius({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        return f"({self.a},{self.b},{self.c},{self.d})"


# ---------------------------------------------------------------------------
# pointwise evaluation
# ---------------------------------------------------------------------------

def _average(f: StepFunction, x: Fraction, r: Fraction) -> Fraction:
    return f.integral(x - r, x + r) / (2 * r)


def _radii(f: StepFunction, x: Fraction) -> list[Fraction]:
    return sorted({abs(x - y) for y in f.breakpoints if y != x})


def _tail_limit(f: StepFunction) -> Fraction:
    return (f.left_tail + f.right_tail) / 2


def eval_mf(f: StepFunction, x) -> Fraction:
    """Exact value of the centred maximal function ``Mf(x)``."""
    x = as_fraction(x)
    left, right = f.one_sided(x)
    best = max(_tail_limit(f), (left + right) / 2)
    for r in _radii(f, x):
        v = _average(f, x, r)
        if v > best:
            best = v
    return best


def _threshold(x: Fraction, a: Fraction) -> Fraction:
    t = a + x
    if t <= 0:
        raise ValueError(f"restricted operators need a + x > 0 (a={a}, x={x})")
    return t


def m0_eval(f: StepFunction, x, a=1) -> Fraction:
    """Supremum of window averages over radii ``0 < r <= a + x``."""
    x, a = as_fraction(x), as_fraction(a)
    t = _threshold(x, a)
    left, right = f.one_sided(x)
    best = max((left + right) / 2, _average(f, x, t))
    for r in _radii(f, x):
        if r > t:
            break
        best = max(best, _average(f, x, r))
    return best


def m1_eval(f: StepFunction, x, a=1) -> Fraction:
    """Supremum of window averages over radii ``r >= a + x``."""
    x, a = as_fraction(x), as_fraction(a)
    t = _threshold(x, a)
    best = max(_tail_limit(f), _average(f, x, t))
    for r in _radii(f, x):
        if r >= t:
            best = max(best, _average(f, x, r))
    return best


def pointwise(operator: str, f: StepFunction, a=1) -> Callable[[Fraction], Fraction]:
    if operator == "M":
        return lambda x: eval_mf(f, x)
    if operator == "M0":
        return lambda x: m0_eval(f, x, a)
    if operator == "M1":
        return lambda x: m1_eval(f, x, a)
    raise ValueError(f"unknown operator {operator!r}; expected one of {OPERATORS}")


# ---------------------------------------------------------------------------
# window families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Window:
    """Averages over ``[x - r(x), x + r(x)]`` with ``r(x) = rho0 + rho1*x``.

    Valid for x strictly inside ``(lo, hi)`` (``None`` meaning infinite).
    """

    rho0: Fraction
    rho1: Fraction
    lo: Fraction | None
    hi: Fraction | None
    anchor: tuple
    source: object

    def valid_at(self, x: Fraction) -> bool:
        return (self.lo is None or x > self.lo) and (self.hi is None or x < self.hi)

    def cuts(self, f: StepFunction) -> set[Fraction]:
        out = {b for b in (self.lo, self.hi) if b is not None}
        left_slope, right_slope = 1 - self.rho1, 1 + self.rho1
        for z in f.breakpoints:
            if left_slope != 0:
                out.add((z + self.rho0) / left_slope)
            if right_slope != 0:
                out.add((z - self.rho0) / right_slope)
        return out

    def mobius(self, f: StepFunction, m: Fraction) -> Mobius:
        """The average as a Mobius function on the cut segment containing m."""
        r = self.rho0 + self.rho1 * m
        left, right = m - r, m + r
        left_slope, right_slope = 1 - self.rho1, 1 + self.rho1
        v_right = f.value_near(right) if right_slope != 0 else Fraction(0)
        v_left = f.value_near(left) if left_slope != 0 else Fraction(0)
        beta = v_right * right_slope - v_left * left_slope
        alpha = f.integral(left, right) - beta * m
        return Mobius(alpha, beta, 2 * self.rho0, 2 * self.rho1)


@dataclass(frozen=True)
class _Constant:
    value: Fraction
    anchor: tuple
    source: object

    def valid_at(self, x) -> bool:
        return True

    def cuts(self, f) -> set[Fraction]:
        return set()

    def mobius(self, f, m) -> Mobius:
        return Mobius.constant(self.value)


def _anchor_windows(f: StepFunction, y: Fraction) -> list[_Window]:
    """Windows of radius ``|x - y|``; one family on each side of y."""
    key = (abs(y), y)
    return [
        _Window(-y, Fraction(1), y, None, key, y),
        _Window(y, Fraction(-1), None, y, key, y),
    ]


def _families(f: StepFunction, operator: str, a: Fraction) -> list:
    tail = _Constant(_tail_limit(f), (float("inf"), 0), "tail")
    if operator == "M":
        fams: list = [tail]
        for y in f.breakpoints:
            fams += _anchor_windows(f, y)
        return fams
    threshold = _Window(a, Fraction(1), -a, None, (float("inf"), -1), "threshold")
    fams = [threshold]
    for y in f.breakpoints:
        key = (abs(y), y)
        # radius x - y for x > y, radius y - x for x < y
        split = (y - a) / 2  # where y - x == a + x
        if operator == "M0":
            if y >= -a:
                fams.append(_Window(-y, Fraction(1), max(y, -a), None, key, y))
            fams.append(_Window(y, Fraction(-1), max(split, -a), y, key, y))
        else:
            if y <= -a:
                fams.append(_Window(-y, Fraction(1), max(y, -a), None, key, y))
            hi = min(split, y)
            if hi > -a:
                fams.append(_Window(y, Fraction(-1), -a, hi, key, y))
    if operator == "M1":
        fams.append(tail)
    return fams


# ---------------------------------------------------------------------------
# piecewise representation
# ---------------------------------------------------------------------------

def _lt(x, y) -> bool:
    """x < y for finite scalars; ``None`` is handled by callers."""
    return scalar_compare(x, y) < 0


def _endpoint_str(x, infinite: str) -> str:
    return infinite if x is None else str(x)


@dataclass(frozen=True)
class MobiusPiece:
    """One linear-fractional piece on the open segment ``(lo, hi)``."""

    mobius: Mobius
    lo: Fraction | QuadraticValue | None
    hi: Fraction | QuadraticValue | None
    source: object = None

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        m = self.mobius
        return (m.a, m.b, m.c, m.d)

    def contains(self, x) -> bool:
        return (self.lo is None or _lt(self.lo, x)) and (self.hi is None or _lt(x, self.hi))

    def left_limit(self):
        return self.mobius.limit(self.lo)

    def right_limit(self):
        return self.mobius.limit(self.hi)

    def __str__(self):
        lo = _endpoint_str(self.lo, "-inf")
        hi = _endpoint_str(self.hi, "inf")
        return f"{self.mobius} on [{lo},{hi}]"


@dataclass(frozen=True)
class Extremum:
    location: Fraction | QuadraticValue
    value: Fraction | QuadraticValue
    kind: str  # "max" or "min"


class PiecewiseMobius:
    """A function on an interval given by Mobius pieces and boundary values.

    ``points`` maps each piece boundary (and each closed finite endpoint of
    the interval) to the function value there.  The value at a boundary may
    differ from the adjacent one-sided limits: maximal functions of step
    functions can jump down at breakpoints of f.  A boundary may be missing
    from ``points`` when the function is undefined there.
    """

    def __init__(self, interval: RealInterval, pieces: Sequence[MobiusPiece], points: dict):
        self.interval = interval
        self.pieces = tuple(pieces)
        self.points = dict(points)

    @property
    def breakpoints(self) -> list:
        """Interior boundaries between consecutive pieces."""
        return [p.hi for p in self.pieces[:-1]]

    def __call__(self, x):
        if isinstance(x, QuadraticValue):
            x = x.simplify()
        if x not in self.interval_scalar_range():
            raise ValueError(f"{x} lies outside {self.interval}")
        for b, v in self.points.items():
            if b == x:
                return v
        for piece in self.pieces:
            if piece.contains(x):
                return piece.mobius(x)
        raise ValueError(f"function undefined at {x}")

    def interval_scalar_range(self):
        return _ScalarRange(self.interval)

    def _states(self) -> list[tuple]:
        """Sweep states ``(value, link)``; link tells how it joins the previous."""
        states: list[tuple] = []
        iv = self.interval
        if not self.pieces:
            return [(v, "same") for v in self.points.values()]
        first = self.pieces[0]
        if first.lo is not None and iv.lo_closed and first.lo in self.points:
            states.append((self.points[first.lo], "same"))
        for i, piece in enumerate(self.pieces):
            states.append((piece.left_limit(), "same"))
            states.append((piece.right_limit(), ("piece", piece.mobius.direction)))
            if piece.hi is None:
                continue
            last = i == len(self.pieces) - 1
            if piece.hi in self.points and (not last or iv.hi_closed):
                states.append((self.points[piece.hi], "same"))
        return states

    def variation(self) -> AlgebraicSum:
        """Exact variation over the interval."""
        total = AlgebraicSum()
        states = self._states()
        for (prev, _), (cur, link) in zip(states, states[1:]):
            if link == "same":
                total = total + abs(_sub(cur, prev))
            else:
                direction = link[1]
                if direction:
                    total = total + AlgebraicSum.of(cur).scale(direction) - AlgebraicSum.of(
                        prev
                    ).scale(direction)
        return total

    def _steps(self) -> list[tuple[int, object, object]]:
        """Signed steps ``(sign, location, value_after)`` in sweep order."""
        steps = []
        states = self._states()
        locs = self._state_locations()
        for (prev, _), (cur, link), loc in zip(states, states[1:], locs[1:]):
            if link == "same":
                s = scalar_sign(_sub(cur, prev))
            else:
                s = link[1] if scalar_compare(cur, prev) != 0 else 0
            steps.append((s, loc, cur))
        return steps

    def _state_locations(self) -> list:
        locs = []
        iv = self.interval
        if not self.pieces:
            return list(self.points)
        first = self.pieces[0]
        if first.lo is not None and iv.lo_closed and first.lo in self.points:
            locs.append(first.lo)
        for i, piece in enumerate(self.pieces):
            locs.append(piece.lo)
            locs.append(piece.hi)
            if piece.hi is None:
                continue
            last = i == len(self.pieces) - 1
            if piece.hi in self.points and (not last or iv.hi_closed):
                locs.append(piece.hi)
        return locs

    def is_monotone(self, direction: int) -> bool:
        """True if nondecreasing (direction 1) or nonincreasing (-1)."""
        return all(s == 0 or s == direction for s, _, _ in self._steps())

    def extrema(self) -> list[Extremum]:
        """Strict interior turning points of the sweep (local max and min)."""
        out = []
        prev_sign, prev_loc, prev_val = 0, None, None
        for s, loc, val in self._steps():
            if s == 0:
                continue
            if prev_sign and s != prev_sign:
                out.append(Extremum(prev_loc, prev_val, "max" if prev_sign > 0 else "min"))
            prev_sign, prev_loc, prev_val = s, loc, val
        return out

    def infimum(self):
        vals = [v for v, _ in self._states()]
        best = vals[0]
        for v in vals[1:]:
            if scalar_compare(v, best) < 0:
                best = v
        return best

    def supremum(self):
        vals = [v for v, _ in self._states()]
        best = vals[0]
        for v in vals[1:]:
            if scalar_compare(v, best) > 0:
                best = v
        return best

    def to_text(self) -> str:
        lines = [f"interval: {self.interval}"]
        for piece in self.pieces:
            lines.append(str(piece))
        for b in sorted(self.points, key=_SortKey):
            lines.append(f"at {b}: {self.points[b]}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"PiecewiseMobius({len(self.pieces)} pieces on {self.interval})"


class _ScalarRange:
    def __init__(self, interval: RealInterval):
        self.iv = interval

    def __contains__(self, x) -> bool:
        iv = self.iv
        if iv.lo is not None:
            c = scalar_compare(x, iv.lo)
            if c < 0 or (c == 0 and not iv.lo_closed):
                return False
        if iv.hi is not None:
            c = scalar_compare(x, iv.hi)
            if c > 0 or (c == 0 and not iv.hi_closed):
                return False
        return True


class _SortKey:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return scalar_compare(self.x, other.x) < 0


def _sub(x, y):
    out = x - y
    return out.simplify() if isinstance(out, QuadraticValue) else out


def rational_between(lo, hi) -> Fraction:
    """A rational strictly between ``lo < hi`` (``None`` = infinite)."""
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(_floor(hi) - 1)
    if hi is None:
        return Fraction(_floor(lo) + 1)
    if not isinstance(lo, QuadraticValue) and not isinstance(hi, QuadraticValue):
        return (lo + hi) / 2
    bits = 32
    while bits <= 1 << 13:
        lo_enc = _enclose(lo, bits)
        hi_enc = _enclose(hi, bits)
        if lo_enc[1] < hi_enc[0]:
            return (lo_enc[1] + hi_enc[0]) / 2
        bits *= 2
    raise PrecisionExhausted(f"cannot separate {lo} and {hi}")


def _enclose(x, bits):
    if isinstance(x, QuadraticValue):
        e = x.enclosure(bits)
        return e.lo, e.hi
    return x, x


def _floor(x) -> int:
    if isinstance(x, QuadraticValue):
        e = x.enclosure(64)
        lo = e.lo.__floor__()
        hi = e.hi.__floor__()
        if lo == hi:
            return lo
        return lo  # one less than the true floor at worst, still a valid bound
    return x.__floor__()


# ---------------------------------------------------------------------------
# upper envelope
# ---------------------------------------------------------------------------

def _upper_envelope(funcs: list[tuple[Mobius, tuple, object]], lo, hi) -> list[MobiusPiece]:
    """Upper envelope of Mobius functions on the open segment ``(lo, hi)``.

    ``lo`` and ``hi`` are rational or ``None``; every function must be
    pole-free and bounded on the closure of the segment.
    """
    best: dict[Mobius, tuple] = {}
    for mob, anchor, source in funcs:
        if mob not in best or anchor < best[mob][0]:
            best[mob] = (anchor, source)
    cands = [(mob, anchor, source) for mob, (anchor, source) in best.items()]
    bounds = []
    for mob, _, _ in cands:
        u, w = mob.limit(lo), mob.limit(hi)
        bounds.append((min(u, w), max(u, w)))
    floor_value = max(b[0] for b in bounds)
    survivors = [c for c, b in zip(cands, bounds) if b[1] >= floor_value]
    if len(survivors) == 1:
        mob, _, source = survivors[0]
        return [MobiusPiece(mob, lo, hi, source)]

    roots = []
    for i in range(len(survivors)):
        for j in range(i + 1, len(survivors)):
            A, B, C = survivors[i][0].difference_poly(survivors[j][0])
            if A == 0 and B == 0 and C == 0:
                continue
            for root in solve_quadratic(A, B, C):
                r = root.simplify()
                if (lo is None or scalar_compare(r, lo) > 0) and (
                    hi is None or scalar_compare(r, hi) < 0
                ):
                    roots.append(r)
    roots = _sorted_unique(roots)
    edges = [lo] + roots + [hi]
    pieces: list[MobiusPiece] = []
    for s, t in zip(edges, edges[1:]):
        m = rational_between(s, t)
        win = None
        for mob, anchor, source in survivors:
            v = mob(m)
            if win is None or v > win[0] or (v == win[0] and anchor < win[2]):
                win = (v, mob, anchor, source)
        _, mob, _, source = win
        if pieces and pieces[-1].mobius == mob:
            pieces[-1] = MobiusPiece(mob, pieces[-1].lo, t, pieces[-1].source)
        else:
            pieces.append(MobiusPiece(mob, s, t, source))
    return pieces


def _sorted_unique(values: list) -> list:
    values = sorted(values, key=_SortKey)
    out = []
    for v in values:
        if not out or out[-1] != v:
            out.append(v)
    return out


def _interval(interval) -> RealInterval:
    if interval is None:
        return RealInterval.real_line()
    if isinstance(interval, RealInterval):
        return interval
    lo, hi = interval
    return RealInterval.closed(lo, hi)


def _segments(interval: RealInterval, cuts: Iterable[Fraction]) -> tuple[list, list]:
    lo, hi = interval.lo, interval.hi
    inner = sorted(c for c in set(cuts) if interval.contains_open(c))
    edges = [lo] + inner + [hi]
    return inner, list(zip(edges, edges[1:]))


def _merge(pieces: list[MobiusPiece], points: dict, keep: set) -> list[MobiusPiece]:
    out: list[MobiusPiece] = []
    for piece in pieces:
        if out and out[-1].mobius == piece.mobius:
            b = piece.lo
            if b not in keep and b in points and points[b] == piece.mobius(b):
                del points[b]
                out[-1] = MobiusPiece(piece.mobius, out[-1].lo, piece.hi, out[-1].source)
                continue
        out.append(piece)
    return out


def envelope(f: StepFunction, interval=None, operator: str = "M", a=1) -> PiecewiseMobius:
    """Exact piecewise representation of Mf (or M0f, M1f) on an interval.

    For ``M0``/``M1`` the interval must lie inside ``(-a, infinity)``.
    """
    iv = _interval(interval)
    a = as_fraction(a)
    value_at = pointwise(operator, f, a)
    if operator != "M" and (iv.lo is None or iv.lo <= -a):
        raise ValueError("M0/M1 envelopes need an interval inside (-a, infinity)")
    if iv.is_empty:
        return PiecewiseMobius(iv, (), {})
    if iv.is_point:
        return PiecewiseMobius(iv, (), {iv.lo: value_at(iv.lo)})
    fams = _families(f, operator, a)
    cuts: set[Fraction] = set(f.breakpoints)
    for fam in fams:
        cuts |= fam.cuts(f)
    inner, segments = _segments(iv, cuts)
    pieces: list[MobiusPiece] = []
    for s, t in segments:
        m = rational_between(s, t)
        funcs = [(fam.mobius(f, m), fam.anchor, fam.source) for fam in fams if fam.valid_at(m)]
        pieces += _upper_envelope(funcs, s, t)
    points = {c: value_at(c) for c in inner}
    for piece in pieces[:-1]:
        if piece.hi not in points:
            points[piece.hi] = piece.mobius(piece.hi)
    if iv.lo is not None and iv.lo_closed:
        points[iv.lo] = value_at(iv.lo)
    if iv.hi is not None and iv.hi_closed:
        points[iv.hi] = value_at(iv.hi)
    keep = {b for b in (iv.lo, iv.hi) if b is not None}
    pieces = _merge(pieces, points, keep)
    return PiecewiseMobius(iv, pieces, points)


def candidates(f: StepFunction, interval) -> list[PiecewiseMobius]:
    """One piecewise window-average function per breakpoint, plus the tail
    constant when f has a nonzero tail.

    The candidate for breakpoint y is ``x -> average of f over
    [x - |x-y|, x + |x-y|]``; it is undefined at ``x = y``.
    """
    iv = _interval(interval)
    if not iv.bounded:
        raise ValueError("candidates need a bounded interval")
    out = []
    for y in f.breakpoints:
        fams = _anchor_windows(f, y)
        cuts = {y} | {(y + z) / 2 for z in f.breakpoints}
        inner, segments = _segments(iv, cuts)
        pieces = []
        for s, t in segments:
            m = rational_between(s, t)
            fam = fams[0] if m > y else fams[1]
            pieces.append(MobiusPiece(fam.mobius(f, m), s, t, y))
        points = {}
        for c in inner:
            if c != y:
                points[c] = _average(f, c, abs(c - y))
        for end, closed in ((iv.lo, iv.lo_closed), (iv.hi, iv.hi_closed)):
            if closed and end != y:
                points[end] = _average(f, end, abs(end - y))
        keep = {iv.lo, iv.hi}
        out.append(PiecewiseMobius(iv, _merge(pieces, points, keep), points))
    if f.left_tail == 0 and f.right_tail == 0:
        return out
    tail = Mobius.constant(_tail_limit(f))
    tail_points = {e: tail.a for e, c in ((iv.lo, iv.lo_closed), (iv.hi, iv.hi_closed)) if c}
    out.append(PiecewiseMobius(iv, [MobiusPiece(tail, iv.lo, iv.hi, "tail")], tail_points))
    return out


def evaluate(f: StepFunction, x, operator: str = "M", a=1):
    """Operator value at a rational or quadratic-irrational point."""
    if isinstance(x, QuadraticValue):
        x = x.simplify()
    if not isinstance(x, QuadraticValue):
        return pointwise(operator, f, a)(as_fraction(x))
    enc = x.enclosure(64)
    env = envelope(f, RealInterval.closed(enc.lo, enc.hi), operator, a)
    return env(x)


def variation_of(f: StepFunction, interval=None, operator: str = "M", a=1) -> AlgebraicSum:
    return envelope(f, interval, operator, a).variation()


def variation_mf(f: StepFunction, interval=None) -> AlgebraicSum:
    """Exact variation of Mf over the interval (default: the real line)."""
    return variation_of(f, interval, "M")


# ---------------------------------------------------------------------------
# attachment and canonical representative
# ---------------------------------------------------------------------------

def attachment_set(f: StepFunction, interval) -> list[RealInterval]:
    """The set ``{x in I : Mf(x) = f(x)}`` as disjoint intervals and points."""
    iv = _interval(interval)
    env = envelope(f, iv)
    atoms: list[tuple] = []  # (lo, hi, is_point)
    for loc, val in env.points.items():
        if isinstance(loc, QuadraticValue):
            continue  # f is constant near an irrational point; see segment handling
        if val == f(loc):
            atoms.append((loc, loc, True))
    for piece in env.pieces:
        probe = rational_between(piece.lo, piece.hi)
        v = f.value_near(probe) if probe not in f.breakpoints else f(probe)
        mob = piece.mobius
        if mob.is_constant:
            if mob.a == v:
                atoms.append((piece.lo, piece.hi, False))
            continue
        x0 = mob.solve_equal(v)
        if x0 is not None and piece.contains(x0):
            atoms.append((x0, x0, True))
    atoms.sort(key=lambda t: (_SortKey(t[0]) if t[0] is not None else _NegInf(), not t[2]))
    spans: list[list] = []
    for lo, hi, is_point in atoms:
        if spans:
            cur = spans[-1]
            if is_point and cur[1] is not None and cur[1] == lo:
                cur[3] = True
                continue
            if not is_point and cur[1] is not None and lo is not None and cur[1] == lo and cur[3]:
                cur[1], cur[3] = hi, False
                continue
        spans.append([lo, hi, is_point, is_point])
    out = []
    for lo, hi, lo_closed, hi_closed in spans:
        out.append(RealInterval(_rat(lo), _rat(hi), lo_closed, hi_closed))
    return out


class _NegInf:
    def __lt__(self, other):
        return True


def _rat(x):
    if x is None:
        return None
    if isinstance(x, QuadraticValue):
        return x.to_fraction()
    return x


def canonical_representative(f: StepFunction) -> StepFunction:
    """Zero where f vanishes on both sides, Mf elsewhere.

    The result is returned as a step function, which requires Mf to be
    constant on every open piece where f is positive.  That holds whenever f
    equals 0 or Mf almost everywhere; otherwise ValueError is raised.
    """
    xs = f.breakpoints
    vs = f.interval_values
    bounds = [None] + list(xs) + [None]
    for i, v in enumerate(vs):
        if v == 0:
            continue
        piece = RealInterval(bounds[i], bounds[i + 1], False, False)
        env = envelope(f, piece)
        if any(not p.mobius.is_constant or p.mobius.a != v for p in env.pieces):
            raise ValueError(
                "canonical representative is not a step function: Mf is not constant "
                f"on the piece {piece} where f = {v}"
            )
    points = []
    for i, x in enumerate(xs):
        if vs[i] == 0 and vs[i + 1] == 0:
            points.append(Fraction(0))
        else:
            points.append(eval_mf(f, x))
    return StepFunction(xs, vs, points)
