"""Step functions on the real line with explicit point values."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import as_fraction


@dataclass(frozen=True)
class RealInterval:
    """An interval of the real line.  ``None`` endpoints are infinite.

    Infinite endpoints are always open; the closedness flags only matter for
    finite ones.
    """

    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo = None if self.lo is None else as_fraction(self.lo)
        hi = None if self.hi is None else as_fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo is None:
            object.__setattr__(self, "lo_closed", False)
        if hi is None:
            object.__setattr__(self, "hi_closed", False)
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"interval lower endpoint {lo} exceeds upper endpoint {hi}")

    @classmethod
    def closed(cls, lo, hi) -> "RealInterval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> "RealInterval":
        return cls(lo, hi, False, False)

    @classmethod
    def real_line(cls) -> "RealInterval":
        return cls(None, None, False, False)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def is_point(self) -> bool:
        return self.bounded and self.lo == self.hi

    @property
    def is_empty(self) -> bool:
        return self.is_point and not (self.lo_closed and self.hi_closed)

    def __contains__(self, x) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def contains_open(self, x) -> bool:
        """True when x lies strictly inside the interval."""
        return (self.lo is None or x > self.lo) and (self.hi is None or x < self.hi)

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{lo},{hi}{right}"

    @classmethod
    def parse(cls, text: str) -> "RealInterval":
        """Parse ``[a,b]``, ``(a,b]``, ``(-inf,b]``, ``R`` and similar."""
        t = text.strip().replace(" ", "")
        if t in ("R", "r", "(-inf,inf)", "ℝ"):
            return cls.real_line()
        if len(t) < 5 or t[0] not in "[(" or t[-1] not in "])" or "," not in t:
            raise ValueError(f"cannot parse interval {text!r}")
        lo_s, hi_s = t[1:-1].split(",", 1)
        lo = None if lo_s in ("-inf", "-oo") else Fraction(lo_s)
        hi = None if hi_s in ("inf", "+inf", "oo") else Fraction(hi_s)
        return cls(lo, hi, t[0] == "[", t[-1] == "]")


def _fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


class StepFunction:
    """A nonnegative step function with finitely many breakpoints.

    With breakpoints ``x[0] < ... < x[k-1]``, ``interval_values[i]`` is the
    value between ``x[i-1]`` and ``x[i]`` (indices 0 and k are the unbounded
    tails) and ``point_values[i]`` is the value at ``x[i]``.  Breakpoints
    where nothing changes are dropped, so equal functions compare equal.
    """

    __slots__ = ("breakpoints", "interval_values", "point_values", "_cumulative")

    def __init__(
        self,
        breakpoints: Sequence = (),
        interval_values: Sequence = (0,),
        point_values: Sequence | None = None,
    ):
        xs = _fractions(breakpoints)
        vs = _fractions(interval_values)
        if len(vs) != len(xs) + 1:
            raise ValueError("need exactly one more interval value than breakpoints")
        if point_values is None:
            ps = tuple((vs[i] + vs[i + 1]) / 2 for i in range(len(xs)))
        else:
            ps = _fractions(point_values)
            if len(ps) != len(xs):
                raise ValueError("need one point value per breakpoint")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(v < 0 for v in vs + ps):
            raise ValueError("step function values must be nonnegative")
        # drop removable breakpoints
        keep = [i for i in range(len(xs)) if not (vs[i] == ps[i] == vs[i + 1])]
        if len(keep) != len(xs):
            new_vs = [vs[0]] + [vs[i + 1] for i in keep]
            xs = tuple(xs[i] for i in keep)
            ps = tuple(ps[i] for i in keep)
            vs = tuple(new_vs)
        self.breakpoints = xs
        self.interval_values = vs
        self.point_values = ps
        cum = [Fraction(0)]
        for i in range(1, len(xs)):
            cum.append(cum[-1] + vs[i] * (xs[i] - xs[i - 1]))
        self._cumulative = tuple(cum)

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value=0) -> "StepFunction":
        return cls((), (value,), ())

    @classmethod
    def right_continuous(cls, breakpoints: Sequence, interval_values: Sequence) -> "StepFunction":
        """Point value at each breakpoint equals the value to its right."""
        vs = _fractions(interval_values)
        return cls(breakpoints, vs, vs[1:])

    # -- basic access -----------------------------------------------------
    @property
    def left_tail(self) -> Fraction:
        return self.interval_values[0]

    @property
    def right_tail(self) -> Fraction:
        return self.interval_values[-1]

    @property
    def is_constant(self) -> bool:
        return not self.breakpoints

    @property
    def max_value(self) -> Fraction:
        return max(self.interval_values + self.point_values)

    def __len__(self):
        return len(self.breakpoints)

    def piece_index(self, x) -> int:
        """Index of the open piece containing x (x must not be a breakpoint)."""
        return bisect.bisect_right(self.breakpoints, x)

    def __call__(self, x) -> Fraction:
        i = bisect.bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return self.point_values[i]
        return self.interval_values[i]

    def one_sided(self, x) -> tuple[Fraction, Fraction]:
        """Left and right limits of f at x."""
        i = bisect.bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return self.interval_values[i], self.interval_values[i + 1]
        v = self.interval_values[i]
        return v, v

    def value_near(self, x) -> Fraction:
        """Interval value of the piece containing x, x not a breakpoint."""
        return self.interval_values[bisect.bisect_right(self.breakpoints, x)]

    def primitive(self, t) -> Fraction:
        """Signed integral of f from the first breakpoint to t."""
        xs = self.breakpoints
        if not xs:
            return self.interval_values[0] * t
        if t <= xs[0]:
            return self.interval_values[0] * (t - xs[0])
        j = bisect.bisect_right(xs, t) - 1
        return self._cumulative[j] + self.interval_values[j + 1] * (t - xs[j])

    def integral(self, a, b) -> Fraction:
        return self.primitive(b) - self.primitive(a)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other: "StepFunction") -> "StepFunction":
        if not isinstance(other, StepFunction):
            return NotImplemented
        xs = sorted(set(self.breakpoints) | set(other.breakpoints))
        vs = [self.interval_values[0] + other.interval_values[0]]
        for i, x in enumerate(xs):
            nxt = xs[i + 1] if i + 1 < len(xs) else x + 1
            m = (x + nxt) / 2
            vs.append(self(m) + other(m))
        ps = [self(x) + other(x) for x in xs]
        return StepFunction(xs, vs, ps)

    def __mul__(self, k) -> "StepFunction":
        k = as_fraction(k)
        if k < 0:
            raise ValueError("scaling factor must be nonnegative")
        return StepFunction(
            self.breakpoints,
            [k * v for v in self.interval_values],
            [k * p for p in self.point_values],
        )

    __rmul__ = __mul__

    # -- comparison and text ----------------------------------------------
    def _key(self):
        return (self.breakpoints, self.interval_values, self.point_values)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"StepFunction(breakpoints={[str(x) for x in self.breakpoints]}, "
            f"interval_values={[str(v) for v in self.interval_values]}, "
            f"point_values={[str(p) for p in self.point_values]})"
        )

    def to_text(self) -> str:
        def row(name, values):
            return f"{name}: " + " ".join(str(v) for v in values)

        return "\n".join(
            [
                row("breakpoints", self.breakpoints),
                row("interval_values", self.interval_values),
                row("point_values", self.point_values),
            ]
        ) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "StepFunction":
        fields = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(":")
            fields[key.strip()] = [Fraction(tok) for tok in rest.split()]
        missing = {"breakpoints", "interval_values", "point_values"} - fields.keys()
        if missing:
            raise ValueError(f"step function text lacks {sorted(missing)}")
        return cls(fields["breakpoints"], fields["interval_values"], fields["point_values"])


def make_indicator(intervals: Sequence, height=1) -> StepFunction:
    """``height`` times a sum of indicators, 1/2 height at each endpoint.

    ``intervals`` holds ``(a, b)`` pairs (or closed RealIntervals), sorted,
    pairwise disjoint and of positive length.
    """
    height = as_fraction(height)
    if height <= 0:
        raise ValueError("indicator height must be positive")
    pairs = []
    for iv in intervals:
        if isinstance(iv, RealInterval):
            if not iv.bounded:
                raise ValueError("indicator intervals must be bounded")
            pairs.append((iv.lo, iv.hi))
        else:
            a, b = iv
            pairs.append((as_fraction(a), as_fraction(b)))
    for a, b in pairs:
        if not a < b:
            raise ValueError(f"interval [{a},{b}] has no positive length")
    for (_, b), (c, _) in zip(pairs, pairs[1:]):
        if not b < c:
            raise ValueError("indicator intervals must be sorted and pairwise disjoint")
    xs, vs = [], [Fraction(0)]
    for a, b in pairs:
        xs += [a, b]
        vs += [height, Fraction(0)]
    return StepFunction(xs, vs)


def _states(f: StepFunction, interval: RealInterval) -> list[Fraction]:
    """Values visited, in order, by a point sweeping through the interval."""
    if interval.is_empty:
        return []
    xs = f.breakpoints
    lo, hi = interval.lo, interval.hi
    if interval.is_point:
        return [f(lo)]
    states: list[Fraction] = []
    if lo is None:
        states.append(f.left_tail)
        first = 0
    else:
        i = bisect.bisect_left(xs, lo)
        if i < len(xs) and xs[i] == lo:
            if interval.lo_closed:
                states.append(f.point_values[i])
            states.append(f.interval_values[i + 1])
            first = i + 1
        else:
            states.append(f.interval_values[i])
            first = i
    last = len(xs) if hi is None else bisect.bisect_left(xs, hi)
    for i in range(first, last):
        states += [f.point_values[i], f.interval_values[i + 1]]
    if hi is not None and last < len(xs) and xs[last] == hi and interval.hi_closed:
        states.append(f.point_values[last])
    return states


def variation(f: StepFunction, interval: RealInterval | None = None) -> Fraction:
    """Exact pointwise variation of f over the interval (default: the real line)."""
    if interval is None:
        interval = RealInterval.real_line()
    states = _states(f, interval)
    return sum((abs(b - a) for a, b in zip(states, states[1:])), Fraction(0))


def affine_pullback(f: StepFunction, alpha, beta=0) -> StepFunction:
    """The composition ``x -> f(alpha*x + beta)``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if alpha == 0:
        raise ValueError("affine map must be nonconstant (alpha != 0)")
    xs = [(x - beta) / alpha for x in f.breakpoints]
    vs = list(f.interval_values)
    ps = list(f.point_values)
    if alpha < 0:
        xs.reverse()
        vs.reverse()
        ps.reverse()
    return StepFunction(xs, vs, ps)


def pullback_interval(interval: RealInterval, alpha, beta=0) -> RealInterval:
    """Preimage of an interval under ``x -> alpha*x + beta``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if alpha == 0:
        raise ValueError("affine map must be nonconstant (alpha != 0)")
    lo = None if interval.lo is None else (interval.lo - beta) / alpha
    hi = None if interval.hi is None else (interval.hi - beta) / alpha
    if alpha > 0:
        return RealInterval(lo, hi, interval.lo_closed, interval.hi_closed)
    return RealInterval(hi, lo, interval.hi_closed, interval.lo_closed)
