"""Exact scalars: rationals, quadratic irrationals and certified comparisons.

Rationals are plain :class:`fractions.Fraction` objects.  Quadratic
irrationals ``p + q*sqrt(d)`` get their own immutable type; finite sums of
them over different radicands are :class:`AlgebraicSum` objects, compared
through dyadic enclosures of increasing precision.
"""

from __future__ import annotations

import enum
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

DEFAULT_MAX_BITS = 1024
PRECISION_ENV = "MAXVAR_PRECISION_BITS"

Scalar = Union[Fraction, "QuadraticValue"]


class PrecisionExhausted(ArithmeticError):
    """Raised when a certified comparison stays undecided at the bit budget."""


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    UNDECIDED = None


def default_max_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_MAX_BITS
    bits = int(raw)
    if bits < 16:
        raise ValueError(f"{PRECISION_ENV} must be at least 16, got {bits}")
    return bits


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions, exact floats and ``"p/q"`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"not a finite number: {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, QuadraticValue) and x.is_rational:
        return x.p
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_fraction(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# square-free decomposition
# ---------------------------------------------------------------------------

def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_LIMIT = 10_000
_PRIMES = _small_primes(_TRIAL_LIMIT)


@lru_cache(maxsize=65536)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (n > 0)."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, d = 1, 1
    for p in _PRIMES:
        if p * p > n:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    if n == 1:
        return s, d
    r = math.isqrt(n)
    if r * r == n:
        return s * r, d
    if n < _TRIAL_LIMIT ** 3:
        # at most two prime factors above the trial bound, and not a square
        return s, d * n
    from sympy import factorint

    for p, e in factorint(n).items():
        p, e = int(p), int(e)  # sympy may hand back gmpy integers
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


# ---------------------------------------------------------------------------
# dyadic enclosures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertifiedInterval:
    """Closed enclosure ``[lo, hi]`` with dyadic endpoints."""

    lo: Fraction
    hi: Fraction
    precision_bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(
            self.lo + other.lo, self.hi + other.hi, min(self.precision_bits, other.precision_bits)
        )

    def disjoint_from(self, other: "CertifiedInterval") -> bool:
        return self.hi < other.lo or other.hi < self.lo


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


def _sqrt_bounds(t: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bounds ``lo <= sqrt(t) <= hi`` with ``hi - lo <= 2**-bits``."""
    n, m = t.numerator, t.denominator
    s = math.isqrt(n * m << (2 * bits))
    scale = m << bits
    lo = Fraction(s, scale)
    hi = lo if s * s == (n * m << (2 * bits)) else Fraction(s + 1, scale)
    return lo, hi


# ---------------------------------------------------------------------------
# quadratic irrationals
# ---------------------------------------------------------------------------

class QuadraticValue:
    """The real number ``p + q*sqrt(d)`` with rational p, q and square-free d.

    Canonical form: ``q == 0`` iff ``d == 0``; ``d == 1`` is folded into p.
    Arithmetic is supported with rationals and with values of the same field.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d=0):
        p = as_fraction(p)
        q = as_fraction(q)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be nonnegative")
        if q == 0 or d == 0:
            q, d = Fraction(0), 0
        else:
            s, d = squarefree_split(d)
            q *= s
            if d == 1:
                p, q, d = p + q, Fraction(0), 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticValue is immutable")

    @classmethod
    def with_radicand(cls, p, q, radicand) -> "QuadraticValue":
        """Build ``p + q*sqrt(radicand)`` for a nonnegative rational radicand."""
        radicand = as_fraction(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        n, m = radicand.numerator, radicand.denominator
        if n == 0:
            return cls(p)
        # sqrt(n/m) = sqrt(n*m)/m
        return cls(p, as_fraction(q) / m, n * m)

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def to_fraction(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return self.p

    def simplify(self) -> Scalar:
        """Return a Fraction when the value is rational, else self."""
        return self.p if self.d == 0 else self

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticValue):
            if other.d and self.d and other.d != self.d:
                raise ValueError(f"mixed fields sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticValue(other)
        return None

    def _field(self, other: "QuadraticValue") -> int:
        return self.d or other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticValue(self.p + o.p, self.q + o.q, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticValue(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticValue(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticValue":
        return QuadraticValue(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def inverse(self) -> "QuadraticValue":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadraticValue(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering ---------------------------------------------------------
    def sign(self) -> int:
        """Exact sign of ``p + q*sqrt(d)``."""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d
        diff = self.p * self.p - self.q * self.q * self.d
        return sp if diff > 0 else (sq if diff < 0 else 0)

    def compare(self, other, max_bits: int | None = None) -> int:
        """Three-way comparison; raises PrecisionExhausted if undecidable."""
        if isinstance(other, (int, Fraction)):
            return (self - other).sign()
        if not isinstance(other, QuadraticValue):
            raise TypeError(f"cannot compare with {other!r}")
        if not self.d or not other.d or self.d == other.d:
            return (self - other).sign()
        order = compare_sums(AlgebraicSum.of(self), AlgebraicSum.of(other), max_bits)
        if order is Ordering.UNDECIDED:
            raise PrecisionExhausted(f"cannot order {self} and {other}")
        return order.value

    def __eq__(self, other):
        if isinstance(other, QuadraticValue):
            return (self.p, self.q, self.d) == (other.p, other.q, other.d)
        if isinstance(other, (int, Fraction)):
            return self.d == 0 and self.p == other
        return NotImplemented

    def __hash__(self):
        if self.d == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticValue)):
            return NotImplemented
        return self.compare(other) < 0

    def __le__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticValue)):
            return NotImplemented
        return self.compare(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticValue)):
            return NotImplemented
        return self.compare(other) > 0

    def __ge__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticValue)):
            return NotImplemented
        return self.compare(other) >= 0

    # -- numerics ---------------------------------------------------------
    def enclosure(self, bits: int) -> CertifiedInterval:
        """Dyadic enclosure of width below ``2**(-bits+2)``."""
        if self.d == 0:
            return CertifiedInterval(
                _floor_dyadic(self.p, bits), _ceil_dyadic(self.p, bits), bits
            )
        lo, hi = _sqrt_bounds(self.q * self.q * self.d, bits)
        if self.q < 0:
            lo, hi = -hi, -lo
        return CertifiedInterval(
            _floor_dyadic(self.p + lo, bits), _ceil_dyadic(self.p + hi, bits), bits
        )

    def __float__(self):
        if self.d == 0:
            return float(self.p)
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticValue({self})"

    def __str__(self):
        if self.d == 0:
            return str(self.p)
        return f"{self.p} + {self.q}*sqrt({self.d})"

    @classmethod
    def parse(cls, text: str) -> "QuadraticValue":
        """Inverse of ``str``: accepts ``"p"`` or ``"p + q*sqrt(d)"``."""
        m = _QV_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"cannot parse quadratic value {text!r}")
        p, q, d = m.group("p"), m.group("q"), m.group("d")
        if q is None:
            return cls(Fraction(p))
        return cls(Fraction(p), Fraction(q), int(d))


_QV_RE = re.compile(
    r"(?P<p>[-+]?\d+(?:/\d+)?)"
    r"(?:\s*\+\s*(?P<q>[-+]?\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\))?"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` into a Fraction or ``"p + q*sqrt(d)"`` into a QuadraticValue."""
    value = QuadraticValue.parse(text)
    return value.simplify()


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, QuadraticValue):
        return x.sign()
    return (x > 0) - (x < 0)


def scalar_compare(x, y, max_bits: int | None = None) -> int:
    """Three-way comparison of Fractions and QuadraticValues."""
    if isinstance(x, QuadraticValue):
        return x.compare(y, max_bits)
    if isinstance(y, QuadraticValue):
        return -y.compare(x, max_bits)
    return (x > y) - (x < y)


def solve_quadratic(A, B, C) -> list[QuadraticValue]:
    """Real roots of ``A x^2 + B x + C`` in increasing order."""
    A, B, C = as_fraction(A), as_fraction(B), as_fraction(C)
    if A == 0 and B == 0 and C == 0:
        raise ValueError("identically zero polynomial")
    if A == 0:
        if B == 0:
            return []
        return [QuadraticValue(-C / B)]
    # scale to coprime integers to keep the radicand small
    den = math.lcm(A.denominator, B.denominator, C.denominator)
    a, b, c = int(A * den), int(B * den), int(C * den)
    g = math.gcd(a, math.gcd(b, c))
    a, b, c = a // g, b // g, c // g
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    centre = Fraction(-b, 2 * a)
    if disc == 0:
        return [QuadraticValue(centre)]
    half = Fraction(1, 2 * abs(a))
    return [QuadraticValue(centre, -half, disc), QuadraticValue(centre, half, disc)]


# ---------------------------------------------------------------------------
# finite sums over several fields
# ---------------------------------------------------------------------------

class AlgebraicSum:
    """A finite sum ``r + sum_i q_i*sqrt(d_i)`` with distinct square-free d_i."""

    __slots__ = ("rational", "_terms")

    def __init__(self, rational=0, terms: dict[int, Fraction] | None = None):
        self.rational = as_fraction(rational)
        clean = {}
        for d, q in (terms or {}).items():
            if q != 0:
                clean[int(d)] = as_fraction(q)
        self._terms = clean

    @classmethod
    def of(cls, x) -> "AlgebraicSum":
        if isinstance(x, AlgebraicSum):
            return x
        if isinstance(x, QuadraticValue):
            return cls(x.p, {x.d: x.q} if x.d else None)
        return cls(as_fraction(x))

    @classmethod
    def total(cls, values: Iterable) -> "AlgebraicSum":
        out = cls()
        for v in values:
            out = out + v
        return out

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def is_rational(self) -> bool:
        return not self._terms

    def to_fraction(self) -> Fraction:
        if self._terms:
            raise ValueError(f"{self} is irrational")
        return self.rational

    def simplify(self):
        """Collapse to a Fraction or a single-field QuadraticValue when possible."""
        if not self._terms:
            return self.rational
        if len(self._terms) == 1:
            (d, q), = self._terms.items()
            return QuadraticValue(self.rational, q, d)
        return self

    def __add__(self, other):
        o = AlgebraicSum.of(other) if not isinstance(other, AlgebraicSum) else other
        terms = dict(self._terms)
        for d, q in o._terms.items():
            terms[d] = terms.get(d, Fraction(0)) + q
        return AlgebraicSum(self.rational + o.rational, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicSum(-self.rational, {d: -q for d, q in self._terms.items()})

    def __sub__(self, other):
        return self + (-AlgebraicSum.of(other))

    def __rsub__(self, other):
        return AlgebraicSum.of(other) - self

    def scale(self, k) -> "AlgebraicSum":
        k = as_fraction(k)
        return AlgebraicSum(self.rational * k, {d: q * k for d, q in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (AlgebraicSum, QuadraticValue, int, Fraction)):
            o = AlgebraicSum.of(other)
            return self.rational == o.rational and self._terms == o._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.rational, tuple(sorted(self._terms.items()))))

    def enclosure(self, bits: int) -> CertifiedInterval:
        """Dyadic enclosure of width below ``2**(-bits)``."""
        # each term is enclosed to width < 2**(-bits-1)/n; outward rounding
        # at bits+2 adds at most 2**(-bits-1)
        extra = max(1, len(self._terms)).bit_length() + 3
        lo = hi = self.rational
        for d, q in self._terms.items():
            e = QuadraticValue(0, q, d).enclosure(bits + extra)
            lo += e.lo
            hi += e.hi
        return CertifiedInterval(_floor_dyadic(lo, bits + 2), _ceil_dyadic(hi, bits + 2), bits)

    def __float__(self):
        return float(self.rational) + sum(float(q) * math.sqrt(d) for d, q in self._terms.items())

    def __repr__(self):
        return f"AlgebraicSum({self})"

    def __str__(self):
        parts = [str(self.rational)] if (self.rational or not self._terms) else []
        for d in sorted(self._terms):
            parts.append(f"{self._terms[d]}*sqrt({d})")
        return " + ".join(parts)


def _schedule(max_bits: int) -> list[int]:
    steps = []
    bits = 32
    while bits < max_bits:
        steps.append(bits)
        bits *= 2
    steps.append(max_bits)
    return steps


def compare_sums_with_precision(a, b, max_bits: int | None = None) -> tuple[Ordering, int]:
    """Like :func:`compare_sums` but also report the bits that were needed."""
    if max_bits is None:
        max_bits = default_max_bits()
    if max_bits < 16:
        raise ValueError("max_bits must be at least 16")
    diff = AlgebraicSum.of(a) - AlgebraicSum.of(b)
    terms = diff.terms
    if not terms:
        s = (diff.rational > 0) - (diff.rational < 0)
        return Ordering(s), 0
    if len(terms) == 1:
        (d, q), = terms.items()
        return Ordering(QuadraticValue(diff.rational, q, d).sign()), 0
    for bits in _schedule(max_bits):
        enc = diff.enclosure(bits)
        if enc.lo > 0:
            return Ordering.GREATER, bits
        if enc.hi < 0:
            return Ordering.LESS, bits
    return Ordering.UNDECIDED, max_bits


def compare_sums(a, b, max_bits: int | None = None) -> Ordering:
    """Certified ordering of two algebraic sums.

    LESS/GREATER need disjoint enclosures (or an exact single-field sign);
    EQUAL needs an exactly vanishing difference.  Overlapping enclosures at
    ``max_bits`` give UNDECIDED.
    """
    return compare_sums_with_precision(a, b, max_bits)[0]


def format_decimal(x, digits: int = 12) -> str:
    """Round an exact value to ``digits`` significant digits, half-even."""
    from decimal import ROUND_HALF_EVEN, Context, Decimal, localcontext

    def rounded(v: Fraction) -> Decimal:
        with localcontext(Context(prec=digits + 40)):
            d = Decimal(v.numerator) / Decimal(v.denominator)
        if d == 0:
            return Decimal(0)
        exp = d.adjusted() - digits + 1
        return d.quantize(Decimal(1).scaleb(exp), rounding=ROUND_HALF_EVEN)

    if isinstance(x, QuadraticValue) and x.d == 0:
        x = x.p
    if isinstance(x, (AlgebraicSum, QuadraticValue)):
        bits = 128
        while True:
            enc = x.enclosure(bits)
            lo, hi = rounded(enc.lo), rounded(enc.hi)
            if lo == hi:
                d = lo
                break
            bits *= 2
            if bits > 1 << 14:
                d = rounded((enc.lo + enc.hi) / 2)
                break
    else:
        d = rounded(as_fraction(x))
    if d == 0:
        return "0"
    text = format(d.normalize(), "f")
    return text
