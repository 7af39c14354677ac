"""Acceptance criteria 1-10, each at its stated tolerance and time limit.

Every test records one ``[k] name: PASS|FAIL`` line; the lines are printed
in the terminal summary of the pytest run.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import conftest
from maxvar.cli import main
from maxvar.continuous import attachment_set, envelope, eval_mf, variation_mf
from maxvar.discrete import discrete_mf, discrete_var, embed_to_step
from maxvar.exact import AlgebraicSum
from maxvar.figures import builtin, figure_spec, plateau_between_bumps, two_bumps
from maxvar.stepfn import RealInterval, StepFunction, variation
from maxvar.verify import (
    LEMMAS,
    LocalOutcome,
    Verdict,
    check_continuous,
    check_local_bound,
    exhaustive_discrete_sweep,
    generate,
    hypothesis_continuous,
    random_lattice,
    suite_lemmas,
)
from oracles import dense_mf

F = Fraction


@contextmanager
def criterion(k, name, limit):
    line = f"[{k}] {name}: FAIL"
    conftest.ACCEPTANCE_LINES[k] = line
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
        line = f"[{k}] {name}: PASS ({elapsed:.1f} s)"
    finally:
        conftest.ACCEPTANCE_LINES[k] = line
        print(line)


def _intervals(f):
    return len(f.breakpoints) // 2


def test_criterion_01_two_bumps_exact():
    with criterion(1, "two bumps exact values", 1.0):
        f = two_bumps(F(3, 2))
        assert eval_mf(f, 0) == F(1, 3)
        assert eval_mf(f, F(1, 2)) == eval_mf(f, F(-1, 2)) == F(1, 4)
        assert variation_mf(f, RealInterval.closed(-1, 1)) == AlgebraicSum.of(F(2, 3))
        spans = attachment_set(f, RealInterval.real_line())
        assert spans == [RealInterval.closed(F(-3, 2), -1), RealInterval.closed(1, F(3, 2))]


def test_criterion_02_two_bumps_parameter_sweep():
    with criterion(2, "two bumps parameter sweep", 30.0):
        rng = random.Random(2)
        cs = set()
        while len(cs) < 50:
            c = F(rng.randint(1, 2000), rng.randint(1, 1000))
            if 1 < c < 3:
                cs.add(c)
        for c in sorted(cs):
            env = envelope(two_bumps(c), RealInterval.closed(-1, 1))
            assert env.variation() == AlgebraicSum.of(1 / c)
            got = [(e.location, e.value, e.kind) for e in env.extrema()]
            low = (3 * c - 3) / (4 * c)
            assert got == [(-c / 3, low, "min"), (0, (c - 1) / c, "max"), (c / 3, low, "min")], c


def test_criterion_03_plateau_counterexample():
    with criterion(3, "plateau between bumps", 1.0):
        f = plateau_between_bumps()
        assert eval_mf(f, 0) == F(7, 15) > F(2, 5)
        assert check_local_bound(f, F(-1, 3), F(1, 3)).outcome is LocalOutcome.FAILS
        check = hypothesis_continuous(f)
        assert not check.admissible
        # witnesses are (x, f(x), Mf(x)) with x on the plateau of height 2/5
        assert check.witnesses
        for x, fx, mfx in check.witnesses:
            assert F(-1, 2) < F(x) < F(1, 2) and F(fx) == F(2, 5) < F(mfx)


def _continuous_suite(kind):
    for i in range(500):
        f = generate(kind, 4000 + i, intervals=(1, 6), max_den=100)
        rep = check_continuous(f)
        assert rep.verdict is not Verdict.VIOLATION, rep.instance
        assert rep.comparison_precision_used <= 1024
        single = _intervals(f) == 1
        assert (rep.verdict is Verdict.EQUALITY) == single, rep.instance
        assert rep.coherent
        yield f, rep


def test_criterion_04_indicator_suite():
    with criterion(4, "indicator suite (500)", 300.0):
        assert sum(1 for _ in _continuous_suite("Indicator")) == 500


def test_criterion_05_single_height_suite():
    with criterion(5, "single-height suite (500)", 300.0):
        n = 0
        for f, rep in _continuous_suite("SingleHeight"):
            n += 1
            if n % 10 == 0:
                c = max(f.interval_values)
                unit = check_continuous(f * (1 / c))
                assert rep.var_mf == unit.var_mf.scale(c) and rep.var_f == c * unit.var_f
        assert n == 500


def test_criterion_06_exhaustive_sweep():
    with criterion(6, "exhaustive sweep on {-8..8}", 600.0):
        s = exhaustive_discrete_sweep(8)
        assert s.instances == 131072
        assert s.violations == 0 and s.incoherent == 0
        assert s.equality_cases == 1 + 17 * 18 // 2 == 154


def test_criterion_07_embedding():
    with criterion(7, "lattice embedding", 120.0):
        rng = random.Random(7)
        for i in range(200):
            f = random_lattice(rng, width=(1, 9), zero_tails=i % 2 == 0)
            g = embed_to_step(f)
            for n in range(int(f.start) - 5, int(f.end) + 6):
                assert discrete_mf(f, n) == eval_mf(g, n), (f, n)
            assert discrete_var(f) == variation(g, RealInterval.real_line())


def test_criterion_08_lemma_suites():
    with criterion(8, "lemma property suites", 300.0):
        for name in LEMMAS:
            s = suite_lemmas(200, 8, [name])
            assert s.instances == 200 and s.violations == 0, (name, s.witnesses[:3])


def _aligned_step(rng):
    """Random step function with breakpoints on the 1/100 grid and zero tails."""
    k = rng.randint(1, 6)
    xs = sorted(rng.sample(range(-300, 301), k))
    vals = [0] + [F(rng.randint(0, 6), rng.choice([1, 2, 3])) for _ in range(k - 1)] + [0]
    pts = [F(rng.randint(0, 6), rng.choice([1, 2, 3])) for _ in range(k)]
    return StepFunction([F(x, 100) for x in xs], vals, pts)


def test_criterion_09_oracle_sandwich():
    with criterion(9, "dense-radius oracle sandwich", 120.0):
        rng = random.Random(9)
        worst = 0.0
        for _ in range(100):
            f = _aligned_step(rng)
            for _ in range(20):
                x = F(rng.randint(-40000, 40000), 10_000)
                exact = eval_mf(f, x)
                lower = dense_mf(f, x, step=1e-4)
                # slack covers float rounding in the oracle only
                assert lower <= float(exact) + 1e-9
                worst = max(worst, float(exact) - lower)
        assert worst < 1e-6, worst


def _file_rows(path):
    with open(path) as fh:
        return [line.split() for line in fh if line.strip()]


def test_criterion_10_figures(tmp_path, capsys):
    with criterion(10, "figure regeneration", 120.0):
        for name in ("two-bumps", "plateau", "four-bumps"):
            exact_dir, dec_dir = tmp_path / f"{name}-exact", tmp_path / f"{name}-dec"
            assert main(["figure", "--builtin", name, "--exact", "--out", str(exact_dir)]) == 0
            assert main(["figure", "--builtin", name, "--out", str(dec_dir)]) == 0
            capsys.readouterr()
            f = builtin(name)
            for curve in figure_spec(name).curves:
                rows = _file_rows(exact_dir / curve.filename)
                assert len(rows) >= 201
                for x, y in rows:
                    if curve.operator is None:
                        expected = str(f(F(x)))
                    else:
                        assert main(["eval", "--builtin", name, f"--x={x}", "--operator", curve.operator]) == 0
                        expected = capsys.readouterr().out.strip()
                    assert y == expected, (name, curve.filename, x)
        twot = dict(_file_rows(tmp_path / "two-bumps-dec" / "data_twot_Mf.dat"))
        assert twot["0"] == "0.333333333333"
        assert twot["0.5"] == twot["-0.5"] == "0.25"
        muchvar = dict(_file_rows(tmp_path / "plateau-dec" / "data_muchvar_Mf.dat"))
        assert muchvar["0"] == "0.466666666667"
        assert dict(_file_rows(tmp_path / "four-bumps-dec" / "data_defp_Mnotf.dat"))["0"] == "0"
