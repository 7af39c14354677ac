"""Discrete centred maximal functions on Z and on the half-integer lattice.

A lattice function lives on ``S = Z + offset`` (offset 0 or 1/2).  Centres
may additionally be 0 when the offset is 1/2: windows are then ``v .. 2n - v``
for lattice points ``v <= n``, which is how averages centred at the midpoint
of an even-length discrete interval are formed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .continuous import Mobius
from .exact import as_fraction, format_fraction, solve_quadratic
from .stepfn import StepFunction

HALF = Fraction(1, 2)


def _offset(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class DiscreteInterval:
    """Lattice points between ``lo`` and ``hi`` inclusive; ``None`` is infinite."""

    lo: Fraction | None = None
    hi: Fraction | None = None

    def __post_init__(self):
        lo = None if self.lo is None else as_fraction(self.lo)
        hi = None if self.hi is None else as_fraction(self.hi)
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"empty discrete interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def whole(cls) -> "DiscreteInterval":
        return cls(None, None)


class LatticeFunction:
    """Nonnegative function on ``Z + offset``: a finite window plus two tails.

    ``values[i]`` is the value at ``start + i``; sites below ``start`` carry
    ``left_tail`` and sites after the window carry ``right_tail``.  Window
    entries equal to the adjacent tail are stripped, so an empty window with
    unequal tails marks the first site of the right tail by ``start``.
    """

    __slots__ = ("offset", "start", "values", "left_tail", "right_tail", "_prefix")

    def __init__(self, values: Sequence = (), start=0, left_tail=0, right_tail=0, offset=None):
        start = as_fraction(start)
        off = _offset(start) if offset is None else as_fraction(offset)
        if off not in (0, HALF) or _offset(start) != off:
            raise ValueError(f"start {start} does not lie on the lattice Z + {off}")
        vals = [as_fraction(v) for v in values]
        lt, rt = as_fraction(left_tail), as_fraction(right_tail)
        if any(v < 0 for v in vals + [lt, rt]):
            raise ValueError("lattice function values must be nonnegative")
        while vals and vals[0] == lt:
            vals.pop(0)
            start += 1
        while vals and vals[-1] == rt:
            vals.pop()
        if not vals and lt == rt:
            start = off
        self.offset = off
        self.start = start
        self.values = tuple(vals)
        self.left_tail = lt
        self.right_tail = rt
        prefix = [Fraction(0)]
        for v in vals:
            prefix.append(prefix[-1] + v)
        self._prefix = tuple(prefix)

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value=0, offset=0) -> "LatticeFunction":
        return cls((), offset, value, value, offset)

    @classmethod
    def indicator(cls, sites: Iterable, height=1, offset=0) -> "LatticeFunction":
        sites = sorted(as_fraction(s) for s in sites)
        if not sites:
            return cls.constant(0, offset)
        lo, hi = sites[0], sites[-1]
        chosen = set(sites)
        n = int(hi - lo) + 1
        return cls([height if lo + i in chosen else 0 for i in range(n)], lo, 0, 0, offset)

    # -- access -----------------------------------------------------------
    @property
    def end(self) -> Fraction:
        """Last window site (``start - 1`` when the window is empty)."""
        return self.start + len(self.values) - 1

    def on_lattice(self, n) -> bool:
        return _offset(as_fraction(n)) == self.offset

    def _check_site(self, n: Fraction):
        if not self.on_lattice(n):
            raise ValueError(f"site {n} is not on the lattice Z + {self.offset}")

    def __call__(self, n) -> Fraction:
        n = as_fraction(n)
        self._check_site(n)
        if n < self.start:
            return self.left_tail
        if n > self.end:
            return self.right_tail
        return self.values[int(n - self.start)]

    @property
    def is_constant(self) -> bool:
        return not self.values and self.left_tail == self.right_tail

    @property
    def max_value(self) -> Fraction:
        return max(self.values + (self.left_tail, self.right_tail))

    def window_sum(self, lo: Fraction, hi: Fraction) -> Fraction:
        """Sum of f over lattice sites ``lo .. hi`` (inclusive, both on S)."""
        if hi < lo:
            return Fraction(0)
        total = Fraction(0)
        s, e = self.start, self.end
        if lo < s:
            total += self.left_tail * (min(hi, s - 1) - lo + 1)
        if hi > e:
            total += self.right_tail * (hi - max(lo, e + 1) + 1)
        a, b = max(lo, s), min(hi, e)
        if a <= b:
            total += self._prefix[int(b - s) + 1] - self._prefix[int(a - s)]
        return total

    def average(self, v: Fraction, n: Fraction) -> Fraction:
        """Average over the window ``v .. 2n - v``."""
        return self.window_sum(v, 2 * n - v) / (2 * (n - v) + 1)

    def reflect(self) -> "LatticeFunction":
        """The function ``n -> f(-n)``."""
        vals = list(reversed(self.values))
        start = -self.end if self.values else -self.start + 1
        return LatticeFunction(vals, start, self.right_tail, self.left_tail, self.offset)

    def translate(self, shift) -> "LatticeFunction":
        """The function ``n -> f(n + shift)``, possibly changing the lattice."""
        shift = as_fraction(shift)
        start = self.start - shift
        return LatticeFunction(self.values, start, self.left_tail, self.right_tail, _offset(start))

    def __mul__(self, k) -> "LatticeFunction":
        k = as_fraction(k)
        return LatticeFunction(
            [k * v for v in self.values], self.start, k * self.left_tail, k * self.right_tail, self.offset
        )

    __rmul__ = __mul__

    def _key(self):
        return (self.offset, self.start, self.values, self.left_tail, self.right_tail)

    def __eq__(self, other):
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"LatticeFunction({self.to_text()!r})"

    # -- text form --------------------------------------------------------
    def to_text(self) -> str:
        vals = " ".join(format_fraction(v) for v in self.values)
        return (
            f"{format_fraction(self.offset)}; {format_fraction(self.left_tail)}; "
            f"{vals} @ {format_fraction(self.start)}; {format_fraction(self.right_tail)}"
        )

    @classmethod
    def from_text(cls, text: str) -> "LatticeFunction":
        parts = [p.strip() for p in text.strip().split(";")]
        if len(parts) != 4:
            raise ValueError(f"expected 'offset; left_tail; values @ start; right_tail', got {text!r}")
        offset, left, window, right = parts
        m = re.fullmatch(r"(.*)@\s*(\S+)", window)
        if not m:
            raise ValueError(f"window must read 'v_a ... v_b @ a', got {window!r}")
        vals = m.group(1).split()
        return cls(vals, m.group(2), left, right, offset)


# ---------------------------------------------------------------------------
# maximal operators
# ---------------------------------------------------------------------------

def _check_centre(f: LatticeFunction, n: Fraction):
    if not (f.on_lattice(n) or n == 0):
        raise ValueError(f"centre {n} is neither on the lattice Z + {f.offset} nor 0")


def _top_site(f: LatticeFunction, n: Fraction) -> Fraction:
    """Largest lattice site ``<= n``."""
    return n if f.on_lattice(n) else n - HALF


def _covered_from(f: LatticeFunction, n: Fraction) -> Fraction:
    """Largest left endpoint v whose window ``v .. 2n-v`` strictly contains the deviation window."""
    return min(f.start - 1, 2 * n - f.end - 1)


def _sup_over(f: LatticeFunction, n: Fraction, v_top: Fraction, v_floor: Fraction | None) -> Fraction | None:
    """Supremum of window averages over left endpoints ``v_floor < v <= v_top``.

    ``v_floor=None`` means unbounded below; the averages then tend to the
    mean of the tails, which is included as a supremum.  Returns ``None``
    when the range is empty.
    """
    best = None
    stop = min(v_top, _covered_from(f, n))
    v = v_top
    while v >= stop and (v_floor is None or v > v_floor):
        avg = f.average(v, n)
        best = avg if best is None or avg > best else best
        v -= 1
    if v_floor is None:
        # past full coverage the averages are monotone towards the tail mean
        limit = (f.left_tail + f.right_tail) / 2
        best = limit if best is None or limit > best else best
    elif v > v_floor:
        # remaining finite range is monotone; its extremes are the two ends
        for w in (v, _first_above(f, v_floor)):
            if w <= v:
                avg = f.average(w, n)
                best = avg if best is None or avg > best else best
    return best


def _first_above(f: LatticeFunction, v_floor: Fraction) -> Fraction:
    w = math.floor(v_floor - f.offset) + f.offset
    return w + 1


def discrete_mf(f: LatticeFunction, n) -> Fraction:
    """Exact discrete centred maximal function at a lattice site (or 0)."""
    n = as_fraction(n)
    _check_centre(f, n)
    return _sup_over(f, n, _top_site(f, n), None)


def discrete_m0(f: LatticeFunction, n, a) -> Fraction:
    """Maximum over left endpoints ``-a < v <= n`` (small windows)."""
    n, a = as_fraction(n), as_fraction(a)
    _check_centre(f, n)
    best = _sup_over(f, n, _top_site(f, n), -a)
    return Fraction(0) if best is None else best


def discrete_m1(f: LatticeFunction, n, a) -> Fraction:
    """Supremum over left endpoints ``v <= -a`` (windows reaching across ``-a``)."""
    n, a = as_fraction(n), as_fraction(a)
    _check_centre(f, n)
    return _sup_over(f, n, min(_top_site(f, n), _top_site(f, -a)), None)


def brute_mf(f: LatticeFunction, n, r_max: int) -> Fraction:
    """Oracle: direct summation over every radius up to ``r_max``, plus the tail limit."""
    n = as_fraction(n)
    _check_centre(f, n)
    centre = (f.start + f.end) / 2
    need = (len(f.values) + 1) // 2 + abs(n - centre) + 1
    if r_max < need:
        raise ValueError(f"r_max={r_max} is too small; need at least {math.ceil(need)}")
    best = (f.left_tail + f.right_tail) / 2
    v = _top_site(f, n)
    while n - v <= r_max:
        total = Fraction(0)
        m = v
        while m <= 2 * n - v:
            total += f(m)
            m += 1
        best = max(best, total / (2 * (n - v) + 1))
        v -= 1
    return best


# ---------------------------------------------------------------------------
# variation
# ---------------------------------------------------------------------------

def sequence_variation(values: Sequence) -> Fraction:
    return sum((abs(b - a) for a, b in zip(values, values[1:])), Fraction(0))


def discrete_var(f: LatticeFunction, interval: DiscreteInterval | None = None) -> Fraction:
    """Sum of ``|f(n) - f(n+1)|`` over consecutive sites of the interval."""
    iv = interval or DiscreteInterval.whole()
    lo = f.start - 1 if iv.lo is None else max(iv.lo, f.start - 1)
    hi = f.end + 1 if iv.hi is None else min(iv.hi, f.end + 1)
    lo = _top_site(f, lo) + (0 if f.on_lattice(lo) else 1)
    if hi < lo:
        return Fraction(0)
    return sequence_variation([f(lo + i) for i in range(int(hi - lo) + 1)])


def _tail_candidates(f: LatticeFunction) -> list[Mobius]:
    """Mf(n) for ``n > end`` as a maximum of Mobius functions of n."""
    e, R, L = f.end, f.right_tail, f.left_tail
    out = [Mobius.constant(R), Mobius.constant((L + R) / 2)]
    v = f.start - 1
    while v <= e:
        T = f.window_sum(v, e)
        out.append(Mobius(T - R * (v + e), 2 * R, 1 - 2 * v, 2))
        v += 1
    return out


def monotone_from(f: LatticeFunction) -> Fraction:
    """A site beyond which Mf is monotone on the right tail."""
    cands = _tail_candidates(f)
    top = f.end + 1
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            A, B, C = cands[i].difference_poly(cands[j])
            if A == 0 and B == 0 and C == 0:
                continue
            for root in solve_quadratic(A, B, C):
                hi = root.enclosure(32).hi
                if hi > top:
                    top = Fraction(math.ceil(hi))
    return _top_site(f, top) + 1


@dataclass(frozen=True)
class MfProfile:
    """Mf on the finite stretch ``sites`` where it can be non-monotone.

    Outside the stretch Mf is monotone and tends to ``left_limit`` and
    ``right_limit``.
    """

    sites: tuple
    values: tuple
    left_limit: Fraction
    right_limit: Fraction

    def variation(self) -> Fraction:
        return (
            abs(self.values[0] - self.left_limit)
            + sequence_variation(self.values)
            + abs(self.values[-1] - self.right_limit)
        )


def mf_profile(f: LatticeFunction) -> MfProfile:
    hi = monotone_from(f)
    lo = -monotone_from(f.reflect())
    n = int(hi - lo) + 1
    sites = tuple(lo + i for i in range(n))
    values = tuple(discrete_mf(f, s) for s in sites)
    mean = (f.left_tail + f.right_tail) / 2
    return MfProfile(sites, values, max(f.left_tail, mean), max(f.right_tail, mean))


def discrete_var_mf(f: LatticeFunction) -> Fraction:
    """Exact variation of Mf over the whole lattice."""
    return mf_profile(f).variation()


def lattice_s0(offset, lo, hi) -> list[Fraction]:
    """Sites of ``[lo, hi] ∩ (S ∪ {0})`` in increasing order."""
    lo, hi, offset = as_fraction(lo), as_fraction(hi), as_fraction(offset)
    first = math.ceil(lo - offset) + offset
    sites = []
    s = first
    while s <= hi:
        sites.append(s)
        s += 1
    if lo <= 0 <= hi and 0 not in sites:
        sites.append(Fraction(0))
        sites.sort()
    return sites


# ---------------------------------------------------------------------------
# embedding into step functions
# ---------------------------------------------------------------------------

def embed_to_step(f: LatticeFunction) -> StepFunction:
    """The right-continuous step function equal to f(n) on ``[n - 1/2, n + 1/2)``."""
    if f.offset != 0:
        raise ValueError("only functions on Z can be embedded")
    if f.is_constant:
        return StepFunction.constant(f.left_tail)
    sites = [f.start + i for i in range(len(f.values) + 1)]
    xs = [s - HALF for s in sites]
    vs = [f.left_tail] + list(f.values) + [f.right_tail]
    return StepFunction.right_continuous(xs, vs)
