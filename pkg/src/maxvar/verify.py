"""Checkers for the sharp variation bounds and the lemmas behind them.

Every check is exact: variations are computed symbolically and compared with
certified enclosures.  An undecided comparison raises instead of being
reported as a pass.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .continuous import (
    envelope,
    eval_mf,
    m0_eval,
    m1_eval,
    rational_between,
    variation_mf,
)
from .discrete import (
    LatticeFunction,
    discrete_m0,
    discrete_m1,
    discrete_mf,
    discrete_var,
    discrete_var_mf,
    lattice_s0,
    mf_profile,
    sequence_variation,
)
from .exact import (
    AlgebraicSum,
    Ordering,
    PrecisionExhausted,
    as_fraction,
    compare_sums_with_precision,
    format_fraction,
)
from .stepfn import RealInterval, StepFunction, make_indicator, variation

RETRY_BUDGET = 10_000


class Verdict(enum.Enum):
    HOLDS = "Holds"
    EQUALITY = "HoldsWithEquality"
    VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class HypothesisCheck:
    """Whether ``f = 0 or f = Mf`` holds (a.e.), with failing points."""

    admissible: bool
    witnesses: tuple = ()


class HypothesisError(ValueError):
    def __init__(self, check: HypothesisCheck, message="hypothesis f = 0 or f = Mf fails"):
        super().__init__(f"{message}: {list(check.witnesses)[:5]}")
        self.check = check


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    var_f: Fraction
    var_mf: AlgebraicSum
    verdict: Verdict
    equality_predicted: bool
    comparison_precision_used: int

    @property
    def coherent(self) -> bool:
        """Observed equality agrees with the structural prediction."""
        return (self.verdict is Verdict.EQUALITY) == self.equality_predicted

    def to_record(self) -> str:
        return json.dumps(
            {
                "instance": self.instance,
                "var_f": format_fraction(self.var_f),
                "var_Mf": str(self.var_mf),
                "verdict": self.verdict.value,
                "equality_predicted": self.equality_predicted,
                "coherent": self.coherent,
                "comparison_precision_used": self.comparison_precision_used,
            },
            sort_keys=True,
        )


def _verdict(var_mf, var_f) -> tuple[Verdict, int]:
    order, bits = compare_sums_with_precision(AlgebraicSum.of(var_mf), AlgebraicSum.of(var_f))
    if order is Ordering.UNDECIDED:
        raise PrecisionExhausted(f"cannot compare var(Mf) = {var_mf} with var(f) = {var_f}")
    if order is Ordering.GREATER:
        return Verdict.VIOLATION, bits
    if order is Ordering.EQUAL:
        return Verdict.EQUALITY, bits
    return Verdict.HOLDS, bits


# ---------------------------------------------------------------------------
# continuous setting
# ---------------------------------------------------------------------------

def _open_pieces(f: StepFunction):
    bounds = [None] + list(f.breakpoints) + [None]
    for i, v in enumerate(f.interval_values):
        yield RealInterval(bounds[i], bounds[i + 1], False, False), v


def hypothesis_continuous(f: StepFunction) -> HypothesisCheck:
    """Exact check that Mf equals f on every open piece where f is positive.

    Point values form a null set and are exempt.
    """
    witnesses = []
    for piece, v in _open_pieces(f):
        if v == 0:
            continue
        for p in envelope(f, piece).pieces:
            if not (p.mobius.is_constant and p.mobius.a == v):
                x = rational_between(p.lo, p.hi)
                witnesses.append((format_fraction(x), format_fraction(v), format_fraction(eval_mf(f, x))))
                break
    return HypothesisCheck(not witnesses, tuple(witnesses))


def equality_predicted_continuous(f: StepFunction) -> bool:
    """f constant, or a bounded positive-length support interval with
    every point value between its one-sided neighbours."""
    if f.is_constant:
        return True
    if f.left_tail != 0 or f.right_tail != 0:
        return False
    vs, ps = f.interval_values, f.point_values
    flags = [vs[0] > 0]
    for i in range(len(ps)):
        flags += [ps[i] > 0, vs[i + 1] > 0]
    positive = [i for i, fl in enumerate(flags) if fl]
    if not positive or positive[-1] - positive[0] + 1 != len(positive):
        return False
    if not any(vs[i] > 0 for i in range(len(vs))):
        return False
    return all(min(vs[i], vs[i + 1]) <= ps[i] <= max(vs[i], vs[i + 1]) for i in range(len(ps)))


def describe(f) -> str:
    if isinstance(f, StepFunction):
        return f.to_text().strip().replace("\n", " | ")
    return f.to_text()


def check_continuous(f: StepFunction) -> VerificationReport:
    check = hypothesis_continuous(f)
    if not check.admissible:
        raise HypothesisError(check)
    var_f = variation(f)
    var_mf = variation_mf(f)
    verdict, bits = _verdict(var_mf, var_f)
    return VerificationReport(describe(f), var_f, var_mf, verdict, equality_predicted_continuous(f), bits)


class LocalOutcome(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"


@dataclass(frozen=True)
class LocalBoundResult:
    outcome: LocalOutcome
    var_mf: AlgebraicSum
    var_f: Fraction
    admissible: bool

    @property
    def witness(self):
        if self.outcome is LocalOutcome.FAILS:
            return {"var_Mf": str(self.var_mf), "var_f": format_fraction(self.var_f)}
        return None


def check_local_bound(f: StepFunction, a, b) -> LocalBoundResult:
    """Compare var(Mf) and var(f) on ``[a, b]`` between two attachment points."""
    a, b = as_fraction(a), as_fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    for x in (a, b):
        if eval_mf(f, x) != f(x):
            raise ValueError(f"{x} is not an attachment point: f = {f(x)}, Mf = {eval_mf(f, x)}")
    iv = RealInterval.closed(a, b)
    var_mf = envelope(f, iv).variation()
    var_f = variation(f, iv)
    verdict, _ = _verdict(var_mf, var_f)
    outcome = LocalOutcome.FAILS if verdict is Verdict.VIOLATION else LocalOutcome.HOLDS
    return LocalBoundResult(outcome, var_mf, var_f, hypothesis_continuous(f).admissible)


@dataclass(frozen=True)
class AbcdReport:
    holds: bool
    checks: dict
    values: dict


def _vanishes_on(f: StepFunction, iv: RealInterval) -> bool:
    for piece, v in _open_pieces(f):
        if v == 0:
            continue
        lo = piece.lo if piece.lo is not None else None
        hi = piece.hi if piece.hi is not None else None
        # open piece meets the interior of iv?
        left = iv.lo if iv.lo is not None else None
        right = iv.hi if iv.hi is not None else None
        if (hi is None or left is None or hi > left) and (lo is None or right is None or lo < right):
            return False
    return True


def _le(x, y) -> bool:
    order, _ = compare_sums_with_precision(AlgebraicSum.of(x), AlgebraicSum.of(y))
    if order is Ordering.UNDECIDED:
        raise PrecisionExhausted(f"cannot compare {x} with {y}")
    return order is not Ordering.GREATER


def _lt(x, y) -> bool:
    order, _ = compare_sums_with_precision(AlgebraicSum.of(x), AlgebraicSum.of(y))
    if order is Ordering.UNDECIDED:
        raise PrecisionExhausted(f"cannot compare {x} with {y}")
    return order is Ordering.LESS


def check_prop_abcd(f: StepFunction, interval: RealInterval) -> AbcdReport:
    """Local bounds for Mf on an interval where f vanishes almost everywhere.

    Bounded ``[a, b]``: the variation of Mf on each half is at most Mf at the
    outer endpoint, strictly unless f vanishes a.e.  Half-line: Mf is
    monotone and its variation is the drop from the endpoint to the infimum.
    """
    if not _vanishes_on(f, interval):
        raise ValueError(f"f does not vanish almost everywhere on {interval}")
    if interval.bounded:
        a, b = interval.lo, interval.hi
        m = (a + b) / 2
        left = envelope(f, RealInterval.closed(a, m)).variation()
        right = envelope(f, RealInterval.closed(m, b)).variation()
        mfa, mfb = eval_mf(f, a), eval_mf(f, b)
        null = all(v == 0 for v in f.interval_values)
        checks = {"left_bound": _le(left, mfa), "right_bound": _le(right, mfb)}
        if not null:
            checks["left_strict"] = _lt(left, mfa)
            checks["right_strict"] = _lt(right, mfb)
        values = {"var_left": left, "var_right": right, "Mf(a)": mfa, "Mf(b)": mfb}
        return AbcdReport(all(checks.values()), checks, values)
    if interval.lo is not None and interval.hi is None:
        a, direction = interval.lo, -1
    elif interval.hi is not None and interval.lo is None:
        a, direction = interval.hi, 1
    else:
        raise ValueError("interval must be bounded or a half-line")
    env = envelope(f, RealInterval(interval.lo, interval.hi, True, True))
    var = env.variation()
    mfa = eval_mf(f, a)
    inf = env.infimum()
    checks = {
        "monotone": env.is_monotone(direction),
        "variation_identity": var == AlgebraicSum.of(mfa) - AlgebraicSum.of(inf),
    }
    return AbcdReport(all(checks.values()), checks, {"var": var, "Mf(a)": mfa, "inf": inf})


# ---------------------------------------------------------------------------
# discrete setting
# ---------------------------------------------------------------------------

def hypothesis_discrete(f: LatticeFunction) -> HypothesisCheck:
    """Exact check of ``f(n) = 0 or f(n) = Mf(n)`` at every site."""
    prof = mf_profile(f)
    witnesses = []
    for s, m in zip(prof.sites, prof.values):
        v = f(s)
        if v != 0 and v != m:
            witnesses.append((format_fraction(s), format_fraction(v), format_fraction(m)))
    # beyond the profile Mf is monotone towards its limit and f is a tail constant
    for tail, limit, first, step in (
        (f.right_tail, prof.right_limit, prof.sites[-1] + 1, 1),
        (f.left_tail, prof.left_limit, prof.sites[0] - 1, -1),
    ):
        if tail > 0 and limit > tail:
            n = first
            while discrete_mf(f, n) <= tail:
                n += step
            witnesses.append((format_fraction(n), format_fraction(tail), format_fraction(discrete_mf(f, n))))
    return HypothesisCheck(not witnesses, tuple(witnesses))


def equality_predicted_discrete(f: LatticeFunction) -> bool:
    if f.is_constant:
        return True
    if f.left_tail != 0 or f.right_tail != 0:
        return False
    return bool(f.values) and all(v > 0 for v in f.values)


def check_discrete(f: LatticeFunction) -> VerificationReport:
    if f.offset != 0:
        raise ValueError("check_discrete expects a function on Z")
    check = hypothesis_discrete(f)
    if not check.admissible:
        raise HypothesisError(check)
    var_f = discrete_var(f)
    var_mf = discrete_var_mf(f)
    verdict, bits = _verdict(var_mf, var_f)
    return VerificationReport(describe(f), var_f, AlgebraicSum.of(var_mf), verdict, equality_predicted_discrete(f), bits)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _random_rationals(rng: random.Random, count: int, span: int, max_den: int) -> list[Fraction]:
    out: set[Fraction] = set()
    while len(out) < count:
        q = rng.randint(1, max_den)
        p = rng.randint(-span * q, span * q)
        out.add(Fraction(p, q))
    return sorted(out)


def random_indicator(rng: random.Random, intervals=(1, 6), max_den=100, span=5, height=1) -> StepFunction:
    k = rng.randint(*intervals) if isinstance(intervals, tuple) else intervals
    pts = _random_rationals(rng, 2 * k, span, max_den)
    return make_indicator(list(zip(pts[::2], pts[1::2])), height)


def random_height(rng: random.Random, max_den=20, top=5) -> Fraction:
    while True:
        c = Fraction(rng.randint(1, top * max_den), rng.randint(1, max_den))
        if 0 < c <= top:
            return c


def random_step(
    rng: random.Random,
    breakpoints=(1, 6),
    max_den=12,
    span=4,
    values=(0, 1, 2, Fraction(1, 2), Fraction(3, 2)),
    zero_tails=True,
    vanish_on: RealInterval | None = None,
) -> StepFunction:
    """Unconstrained step function; optionally zero a.e. on ``vanish_on``."""
    k = rng.randint(*breakpoints) if isinstance(breakpoints, tuple) else breakpoints
    xs = _random_rationals(rng, k, span, max_den)
    if vanish_on is not None:
        xs = sorted(set(xs) | {b for b in (vanish_on.lo, vanish_on.hi) if b is not None})
    vs = [rng.choice(values) for _ in range(len(xs) + 1)]
    ps = [rng.choice(values) for _ in xs]
    if zero_tails:
        vs[0] = vs[-1] = 0
    if vanish_on is not None:
        bounds = [None] + xs + [None]
        for i in range(len(vs)):
            lo, hi = bounds[i], bounds[i + 1]
            inside_lo = vanish_on.lo is None or (lo is not None and lo >= vanish_on.lo)
            inside_hi = vanish_on.hi is None or (hi is not None and hi <= vanish_on.hi)
            if inside_lo and inside_hi:
                vs[i] = 0
    return StepFunction(xs, vs, ps)


def random_lattice(
    rng: random.Random,
    width=(1, 9),
    values=(0, 1, 2, Fraction(1, 2)),
    offset=0,
    start=None,
    zero_tails=True,
) -> LatticeFunction:
    w = rng.randint(*width) if isinstance(width, tuple) else width
    s = rng.randint(-5, 5) + as_fraction(offset) if start is None else as_fraction(start)
    vals = [rng.choice(values) for _ in range(w)]
    lt = 0 if zero_tails else rng.choice(values)
    rt = 0 if zero_tails else rng.choice(values)
    return LatticeFunction(vals, s, lt, rt, offset)


def random_admissible_lattice(
    rng: random.Random, window=9, heights=(1, 2, Fraction(1, 2), Fraction(3, 2)), single_height=0.5
) -> LatticeFunction:
    """Lattice function on Z with ``f = 0 or f = Mf`` everywhere.

    Single-height indicators are admissible by construction.  Otherwise
    zero-separated blocks with random heights are drawn until one passes
    the exact hypothesis check.
    """
    if rng.random() < single_height:
        sites = [n for n in range(window) if rng.random() < 0.5] or [rng.randrange(window)]
        return LatticeFunction.indicator(sites, rng.choice(heights))
    failures = 0
    for _ in range(RETRY_BUDGET):
        vals = [Fraction(0)] * window
        pos = rng.randrange(2)
        while pos < window:
            length = rng.randint(1, 4)
            h = rng.choice(heights)
            for i in range(pos, min(window, pos + length)):
                vals[i] = as_fraction(h)
            pos += length + rng.randint(1, 4)
        f = LatticeFunction(vals, 0)
        if hypothesis_discrete(f).admissible:
            return f
        failures += 1
    raise GenerationError(
        f"no admissible multi-height instance after {RETRY_BUDGET} attempts "
        f"(window {window}, heights {list(map(str, heights))}, {failures} rejected)"
    )


GENERATOR_KINDS = ("Indicator", "SingleHeight", "AdmissibleDiscrete", "Arbitrary")


def generate(kind: str, seed: int, **params):
    """Deterministic random instance of the given kind."""
    rng = random.Random(seed)
    if kind == "Indicator":
        return random_indicator(rng, **params)
    if kind == "SingleHeight":
        params = dict(params)
        c = params.pop("height", None)
        c = random_height(rng) if c is None else as_fraction(c)
        return random_indicator(rng, height=c, **params)
    if kind == "AdmissibleDiscrete":
        return random_admissible_lattice(rng, **params)
    if kind == "Arbitrary":
        return random_step(rng, **params)
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


# ---------------------------------------------------------------------------
# summaries
# ---------------------------------------------------------------------------

@dataclass
class Summary:
    """Counts merged across runs; ``+`` is commutative and associative."""

    instances: int = 0
    violations: int = 0
    undecided: int = 0
    equality_cases: int = 0
    incoherent: int = 0
    worst_margin: Fraction | None = None
    witnesses: list = field(default_factory=list)

    def __add__(self, other: "Summary") -> "Summary":
        margins = [m for m in (self.worst_margin, other.worst_margin) if m is not None]
        return Summary(
            self.instances + other.instances,
            self.violations + other.violations,
            self.undecided + other.undecided,
            self.equality_cases + other.equality_cases,
            self.incoherent + other.incoherent,
            min(margins) if margins else None,
            sorted(self.witnesses + other.witnesses),
        )

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.undecided == 0 and self.incoherent == 0

    def line(self) -> str:
        return f"{self.instances} instances, {self.violations} violations, equality cases: {self.equality_cases}"

    def to_record(self) -> str:
        return json.dumps(
            {
                "instances": self.instances,
                "violations": self.violations,
                "undecided": self.undecided,
                "equality_cases": self.equality_cases,
                "incoherent": self.incoherent,
                "worst_margin": None if self.worst_margin is None else format_fraction(self.worst_margin),
                "witnesses": self.witnesses,
            },
            sort_keys=True,
        )

    @classmethod
    def of_report(cls, rep: VerificationReport) -> "Summary":
        s = cls(instances=1)
        if rep.verdict is Verdict.VIOLATION:
            s.violations = 1
            s.witnesses = [rep.instance]
        elif rep.verdict is Verdict.EQUALITY:
            s.equality_cases = 1
        else:
            s.worst_margin = Fraction(rep.var_f) - _lower_fraction(rep.var_mf)
        if not rep.coherent:
            s.incoherent = 1
            s.witnesses = s.witnesses + [rep.instance]
        return s


def _lower_fraction(x: AlgebraicSum) -> Fraction:
    if x.is_rational:
        return x.to_fraction()
    return x.enclosure(64).hi  # margin reported from above on var(Mf)


def _run(reports: Callable[[], list]) -> Summary:
    total = Summary()
    for make in reports():
        try:
            total = total + Summary.of_report(make())
        except PrecisionExhausted as exc:
            total = total + Summary(instances=1, undecided=1, witnesses=[str(exc)])
    return total


def suite_continuous(count: int, seed: int, kind: str = "mixed") -> Summary:
    """Random indicators and single-height functions through check_continuous."""

    def makers():
        for i in range(count):
            k = kind if kind != "mixed" else ("Indicator" if i % 2 == 0 else "SingleHeight")
            f = generate(k, seed * 1_000_003 + i)
            yield lambda f=f: check_continuous(f)

    return _run(makers)


def suite_discrete(count: int, seed: int, window: int = 9) -> Summary:
    def makers():
        for i in range(count):
            f = generate("AdmissibleDiscrete", seed * 1_000_003 + i, window=window)
            yield lambda f=f: check_discrete(f)

    return _run(makers)


# ---------------------------------------------------------------------------
# exhaustive sweep over {0,1}-valued functions on {-N..N}
# ---------------------------------------------------------------------------

def exhaustive_discrete_sweep(N: int) -> Summary:
    """All indicator functions on ``{-N, ..., N}`` with zero tails.

    Window sums are integers; every average is scaled by the lcm of the
    window lengths so that comparisons are exact integer comparisons.
    """
    if not 0 <= N <= 20:
        raise ValueError("N must lie in 0..20")
    width = 2 * N + 1
    sites = np.arange(-N - 1, N + 2)  # Mf is monotone to 0 outside this range
    r_max = 2 * N + 1
    scale = math.lcm(*range(1, 2 * r_max + 2, 2))
    dtype = np.int64 if scale * width < 2**62 else object
    masks = np.arange(2**width, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(width)) & 1).astype(np.int64)  # column j is site j - N
    pad = r_max + N + 2
    padded = np.zeros((len(masks), width + 2 * pad), dtype=np.int64)
    padded[:, pad : pad + width] = bits
    prefix = np.zeros((len(masks), padded.shape[1] + 1), dtype=np.int64)
    np.cumsum(padded, axis=1, out=prefix[:, 1:])
    mf = np.zeros((len(masks), len(sites)), dtype=dtype)
    for j, n in enumerate(sites):
        c = pad + N + int(n)  # column of site n
        for r in range(r_max + 1):
            s = (prefix[:, c + r + 1] - prefix[:, c - r]).astype(dtype)
            mf[:, j] = np.maximum(mf[:, j], s * (scale // (2 * r + 1)))
    var_mf = np.abs(np.diff(mf, axis=1)).sum(axis=1) + mf[:, 0] + mf[:, -1]
    padded_f = np.zeros((len(masks), width + 2), dtype=np.int64)
    padded_f[:, 1:-1] = bits
    var_f = np.abs(np.diff(padded_f, axis=1)).sum(axis=1).astype(dtype) * scale
    low = masks & -masks
    shifted = np.where(masks > 0, masks // np.maximum(low, 1), 0)
    predicted = (masks == 0) | ((shifted & (shifted + 1)) == 0)
    violation = var_mf > var_f
    equal = var_mf == var_f
    summary = Summary(
        instances=len(masks),
        violations=int(violation.sum()),
        equality_cases=int(equal.sum()),
        incoherent=int((equal != predicted).sum()),
    )
    strict = ~equal & ~violation
    if strict.any():
        summary.worst_margin = Fraction(int((var_f - var_mf)[strict].min()), scale)
    for m in masks[violation | (equal != predicted)][:10]:
        summary.witnesses.append(format(int(m), f"0{width}b"))
    return summary


# ---------------------------------------------------------------------------
# lemma checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaResult:
    name: str
    passed: bool
    detail: str = ""


def _rand_point(rng: random.Random, lo=0, hi=2, den=24) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def lemma_gradient_continuous(rng: random.Random) -> LemmaResult:
    """Difference quotients of M1 f are controlled by ``M1 f / (1 + x)``."""
    f = random_step(rng, vanish_on=RealInterval.closed(-1, 1), span=5)
    x = _rand_point(rng)
    y = _rand_point(rng)
    while y == x:
        y = _rand_point(rng)
    mx, my = m1_eval(f, x), m1_eval(f, y)
    d = abs(x - y)
    q = (mx - my) / d
    ok = q <= mx / (1 + x + d) <= my / (1 + x)
    return LemmaResult("gradient-continuous", ok, f"x={x} y={y} M1f(x)={mx} M1f(y)={my}")


def _random_half_setting(rng: random.Random):
    """Lattice S, a positive a in S and f on S vanishing on (-a, a)."""
    offset = rng.choice((Fraction(0), Fraction(1, 2)))
    a = rng.randint(1, 4) - offset
    start = -a - rng.randint(0, 4)
    vals = [rng.choice((0, 1, 2, Fraction(1, 2))) for _ in range(rng.randint(1, 12))]
    for i in range(len(vals)):
        if -a < start + i < a:
            vals[i] = 0
    if not any(vals):
        vals[0] = 1
    return LatticeFunction(vals, start, 0, 0, offset), Fraction(a)


def lemma_gradient_discrete(rng: random.Random) -> LemmaResult:
    f, a = _random_half_setting(rng)
    sites = lattice_s0(f.offset, 0, a + 4)
    n, m = rng.sample(sites, 2)
    mn, mm = discrete_m1(f, n, a), discrete_m1(f, m, a)
    d = abs(n - m)
    ok = (mn - mm) / d <= mn / (n + a + Fraction(1, 2) + d) <= mm / (n + a + Fraction(1, 2))
    return LemmaResult("gradient-discrete", ok, f"f={f.to_text()} a={a} n={n} m={m}")


def lemma_m0_monotone_continuous(rng: random.Random) -> LemmaResult:
    f = random_step(rng, vanish_on=RealInterval.closed(-1, 1), span=5)
    env = envelope(f, RealInterval.closed(0, 1), "M0", 1)
    grid = [Fraction(i, 16) for i in range(17)]
    vals = [m0_eval(f, x) for x in grid]
    ok = env.is_monotone(1) and all(u <= v for u, v in zip(vals, vals[1:])) and vals[0] == 0
    return LemmaResult("m0-monotone-continuous", ok, describe(f))


def lemma_m0_monotone_discrete(rng: random.Random) -> LemmaResult:
    f, a = _random_half_setting(rng)
    vals = [discrete_m0(f, n, a) for n in lattice_s0(f.offset, 0, a)]
    ok = all(u <= v for u, v in zip(vals, vals[1:]))
    return LemmaResult("m0-monotone-discrete", ok, f"f={f.to_text()} a={a}")


def lemma_m1_variation_continuous(rng: random.Random) -> LemmaResult:
    f = random_step(rng, vanish_on=RealInterval.closed(-1, 1), span=5)
    var = envelope(f, RealInterval.closed(0, 1), "M1", 1).variation()
    bound = m1_eval(f, 1)
    nonzero = any(v > 0 for v in f.interval_values)
    ok = _lt(var, bound) if nonzero else _le(var, bound)
    return LemmaResult("m1-variation-continuous", ok, f"{describe(f)} var={var} M1f(1)={bound}")


def lemma_m1_variation_discrete(rng: random.Random) -> LemmaResult:
    f, a = _random_half_setting(rng)
    vals = [discrete_m1(f, n, a) for n in lattice_s0(f.offset, 0, a)]
    bound = 2 * a / (2 * a + 1) * discrete_m1(f, a, a)
    ok = sequence_variation(vals) <= bound
    return LemmaResult("m1-variation-discrete", ok, f"f={f.to_text()} a={a}")


def _brute_sequence_variation(values: list) -> Fraction:
    """Supremum over all monotone samplings (index subsequences)."""
    best = Fraction(0)
    n = len(values)
    for k in range(2, n + 1):
        for idx in itertools.combinations(range(n), k):
            best = max(best, sum((abs(values[j] - values[i]) for i, j in zip(idx, idx[1:])), Fraction(0)))
    return best


def lemma_var_of_max(rng: random.Random) -> LemmaResult:
    k = rng.randint(2, 7)
    g = sorted(Fraction(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(k))
    h = [Fraction(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(k)]
    if g[-1] > h[-1]:
        h[-1] = g[-1] + Fraction(rng.randint(0, 3), 2)
    u = [max(p, q) for p, q in zip(g, h)]
    brute_u, brute_h = _brute_sequence_variation(u), _brute_sequence_variation(h)
    ok = brute_u <= brute_h and brute_u == sequence_variation(u) and brute_h == sequence_variation(h)
    return LemmaResult("var-of-max", ok, f"g={g} h={h}")


def lemma_halfline_continuous(rng: random.Random) -> LemmaResult:
    a = Fraction(rng.randint(-8, 8), 4)
    f = random_step(rng, vanish_on=RealInterval(a, None, True, False), span=4)
    rep = check_prop_abcd(f, RealInterval(a, None, True, False))
    return LemmaResult("halfline-continuous", rep.holds, describe(f))


def lemma_halfline_discrete(rng: random.Random) -> LemmaResult:
    f = random_lattice(rng, width=(1, 10))
    a = f.end + rng.randint(0, 3) if f.values else Fraction(0)
    prof = mf_profile(f)
    vals = [v for s, v in zip(prof.sites, prof.values) if s >= a]
    if not vals:
        vals = [discrete_mf(f, a)]
    ok = all(u >= v for u, v in zip(vals, vals[1:])) and vals[-1] >= prof.right_limit
    return LemmaResult("halfline-discrete", ok, f.to_text())


def lemma_local_bound_strict(rng: random.Random) -> LemmaResult:
    """Both half-interval bounds hold strictly on an interval where f vanishes."""
    a = Fraction(rng.randint(-6, 2), 2)
    b = a + Fraction(rng.randint(1, 6), 2)
    iv = RealInterval.closed(a, b)
    f = random_step(rng, vanish_on=iv, span=6)
    if all(v == 0 for v in f.interval_values):
        f = f + make_indicator([(b + 1, b + 2)])
    rep = check_prop_abcd(f, iv)
    return LemmaResult("local-bound-strict", rep.holds, describe(f))


LEMMAS = {
    "gradient-continuous": lemma_gradient_continuous,
    "gradient-discrete": lemma_gradient_discrete,
    "m0-monotone-continuous": lemma_m0_monotone_continuous,
    "m0-monotone-discrete": lemma_m0_monotone_discrete,
    "m1-variation-continuous": lemma_m1_variation_continuous,
    "m1-variation-discrete": lemma_m1_variation_discrete,
    "var-of-max": lemma_var_of_max,
    "halfline-continuous": lemma_halfline_continuous,
    "halfline-discrete": lemma_halfline_discrete,
    "local-bound-strict": lemma_local_bound_strict,
}


def run_lemma(name: str, count: int, seed: int) -> list[LemmaResult]:
    check = LEMMAS[name]
    return [check(random.Random(f"{name}:{seed}:{i}")) for i in range(count)]


def suite_lemmas(count: int, seed: int, names=None) -> Summary:
    total = Summary()
    for name in names or LEMMAS:
        for res in run_lemma(name, count, seed):
            s = Summary(instances=1)
            if not res.passed:
                s.violations = 1
                s.witnesses = [f"{res.name}: {res.detail}"]
            total = total + s
    return total
