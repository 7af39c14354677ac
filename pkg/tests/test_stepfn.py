from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxvar.stepfn import (
    RealInterval,
    StepFunction,
    affine_pullback,
    make_indicator,
    pullback_interval,
    variation,
)
from oracles import brute_step_variation

F = Fraction
R = RealInterval.real_line()


def two_bumps(c=F(3, 2)):
    return make_indicator([(-c, -1), (1, c)])


def test_indicator_fields():
    f = make_indicator([(0, 1)])
    assert f.breakpoints == (0, 1)
    assert f.interval_values == (0, 1, 0)
    assert f.point_values == (F(1, 2), F(1, 2))


def test_two_bump_indicator():
    f = two_bumps()
    assert f.breakpoints == (F(-3, 2), -1, 1, F(3, 2))
    assert f.interval_values == (0, 1, 0, 1, 0)


def test_empty_indicator_is_zero():
    f = make_indicator([])
    assert f.breakpoints == () and f.interval_values == (0,)


@pytest.mark.parametrize(
    "intervals",
    [[(0, 1), (F(1, 2), 2)], [(0, 1), (1, 2)], [(0, 0)], [(2, 3), (0, 1)]],
)
def test_indicator_rejects_bad_intervals(intervals):
    with pytest.raises(ValueError):
        make_indicator(intervals)


def test_variation_examples():
    assert variation(make_indicator([(0, 1)]), R) == 2
    assert variation(two_bumps(), RealInterval.closed(-1, 1)) == 1
    assert variation(two_bumps(), R) == 4
    assert brute_step_variation(two_bumps()) == 4


def test_variation_endpoint_rules():
    f = make_indicator([(0, 1)])
    # endpoint inside a constant piece contributes nothing
    assert variation(f, RealInterval.closed(F(1, 2), 5)) == 1
    # closed endpoint at a breakpoint uses the point value
    assert variation(f, RealInterval.closed(0, F(1, 2))) == F(1, 2)
    assert variation(f, RealInterval(0, F(1, 2), False, True)) == 0
    assert variation(f, RealInterval.closed(0, 0)) == 0


def test_pullbacks():
    chi = make_indicator([(0, 1)])
    assert affine_pullback(chi, 1) == chi
    assert affine_pullback(chi, -1) == make_indicator([(-1, 0)])
    assert affine_pullback(make_indicator([(0, 2)]), 2, 0) == chi
    with pytest.raises(ValueError):
        affine_pullback(chi, 0)


def test_normalization_drops_removable_breakpoints():
    f = StepFunction([0, 1, 2], [0, 1, 1, 0], [F(1, 2), 1, F(1, 2)])
    assert f.breakpoints == (0, 2)


def test_right_continuous_builder():
    f = StepFunction.right_continuous([F(-1, 2), F(1, 2)], [0, 1, 0])
    assert f(F(-1, 2)) == 1 and f(F(1, 2)) == 0


def test_text_format():
    f = make_indicator([(F(-3, 2), 1)], F(2, 5))
    text = f.to_text()
    assert text.splitlines()[0] == "breakpoints: -3/2 1"
    assert text.splitlines()[1] == "interval_values: 0 2/5 0"
    assert text.splitlines()[2] == "point_values: 1/5 1/5"
    assert StepFunction.from_text(text) == f


def test_interval_parse():
    assert RealInterval.parse("[-1,1]") == RealInterval.closed(-1, 1)
    assert RealInterval.parse("R") == R
    iv = RealInterval.parse("(-inf,2]")
    assert iv.lo is None and iv.hi == 2 and iv.hi_closed


values = st.sampled_from([F(0), F(1), F(2), F(1, 2), F(5, 3)])


@st.composite
def step_functions(draw, zero_tails=False):
    k = draw(st.integers(0, 6))
    xs = sorted(draw(st.sets(st.fractions(-10, 10, max_denominator=8), min_size=k, max_size=k)))
    vs = draw(st.lists(values, min_size=len(xs) + 1, max_size=len(xs) + 1))
    ps = draw(st.lists(values, min_size=len(xs), max_size=len(xs)))
    if zero_tails:
        vs[0] = vs[-1] = F(0)
    return StepFunction(xs, vs, ps)


@settings(max_examples=80)
@given(step_functions(), st.fractions(-12, 12, max_denominator=8))
def test_variation_splits_at_continuity_points(f, c):
    if c in f.breakpoints:
        return
    left = variation(f, RealInterval(None, c, False, True))
    right = variation(f, RealInterval(c, None, True, False))
    assert variation(f, R) == left + right


@settings(max_examples=80)
@given(step_functions(), st.fractions(-3, 3, max_denominator=5).filter(lambda a: a != 0),
       st.fractions(-3, 3, max_denominator=5), st.fractions(-5, 5, max_denominator=4),
       st.fractions(0, 5, max_denominator=4))
def test_variation_invariant_under_pullback(f, alpha, beta, lo, width):
    iv = RealInterval.closed(lo, lo + width)
    g = affine_pullback(f, alpha, beta)
    assert variation(g, pullback_interval(iv, alpha, beta)) == variation(f, iv)
    assert variation(g, R) == variation(f, R)


@settings(max_examples=60)
@given(st.lists(st.fractions(-20, 20, max_denominator=6), min_size=0, max_size=10, unique=True),
       st.fractions(1, 5, max_denominator=4))
def test_indicator_variation_count(points, height):
    pts = sorted(points)
    pairs = list(zip(pts[::2], pts[1::2]))
    f = make_indicator(pairs, height)
    assert variation(f, R) == 2 * len(pairs) * height


@settings(max_examples=80)
@given(step_functions())
def test_text_round_trip_idempotent(f):
    g = StepFunction.from_text(f.to_text())
    assert g == f and g.to_text() == f.to_text()


@settings(max_examples=80)
@given(step_functions())
def test_variation_matches_sampling_oracle(f):
    assert variation(f, R) == brute_step_variation(f)
