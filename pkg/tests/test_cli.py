import os
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from maxvar.cli import main
from maxvar.continuous import evaluate
from maxvar.exact import parse_scalar
from maxvar.figures import builtin, curve_rows, figure_spec
from oracles import dense_mf

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--builtin", "two-bumps", "--c", "3/2", "--x", "0"], "1/3"),
        (["--builtin", "two-bumps", "--c", "3/2", "--x", "1/2"], "1/4"),
        (["--builtin", "plateau", "--x", "0"], "7/15"),
        (["--builtin", "zero", "--x", "5"], "0"),
        (["--builtin", "four-bumps", "--x", "0", "--operator", "M1"], "2/5"),
        (["--builtin", "four-bumps", "--x", "0", "--operator", "M0"], "0"),
    ],
)
def test_eval(capsys, argv, expected):
    assert run(capsys, "eval", *argv)[:2] == (0, expected)


def test_eval_at_irrational_point(capsys):
    code, out, _ = run(capsys, "eval", "--builtin", "two-bumps", "--x", "1/10 + 1/10*sqrt(2)")
    x = 0.1 + 0.1 * 2**0.5
    assert code == 0 and abs(float(parse_scalar(out)) - dense_mf(builtin("two-bumps"), x, step=1e-5)) < 1e-4


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--interval", "[-1,1]", "--of", "Mf"], "2/3"),
        (["--interval", "[-1,1]", "--of", "f"], "1"),
        (["--interval", "R", "--of", "f"], "4"),
    ],
)
def test_var(capsys, argv, expected):
    assert run(capsys, "var", "--builtin", "two-bumps", "--c", "3/2", *argv)[:2] == (0, expected)


def test_var_zero(capsys):
    assert run(capsys, "var", "--builtin", "zero")[:2] == (0, "0")


def test_files(capsys, tmp_path):
    step = tmp_path / "chi.txt"
    step.write_text("breakpoints: 0 1\ninterval_values: 0 1 0\npoint_values: 1/2 1/2\n")
    assert run(capsys, "eval", "--file", str(step), "--x", "2")[:2] == (0, "1/4")
    assert run(capsys, "var", "--file", str(step), "--interval", "R")[:2] == (0, "2")
    lattice = tmp_path / "point.txt"
    lattice.write_text("0; 0; 1 @ 0; 0\n")
    assert run(capsys, "eval", "--file", str(lattice), "--x", "1")[:2] == (0, "1/3")
    assert run(capsys, "var", "--file", str(lattice), "--of", "Mf")[:2] == (0, "2")
    assert run(capsys, "var", "--file", str(lattice), "--of", "f", "--interval", "[0,5]")[:2] == (0, "1")


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sweep", "--N", "6")
    assert code == 0 and out == "8192 instances, 0 violations, equality cases: 92"


def test_verify_lemmas_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "lemmas", "--count", "3", "--seed", "42", "--json")
    second = run(capsys, "verify", "--suite", "lemmas", "--count", "3", "--seed", "42", "--json")
    assert first[0] == 0 and first == second


def test_verify_continuous(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "continuous", "--count", "4", "--seed", "1")
    assert code == 0 and out.startswith("4 instances, 0 violations")


def test_verify_violation_exit_code(capsys, monkeypatch):
    from maxvar import verify

    monkeypatch.setattr(verify, "exhaustive_discrete_sweep", lambda N: verify.Summary(1, 1, witnesses=["101"]))
    code, _, err = run(capsys, "verify", "--suite", "sweep", "--N", "1")
    assert code == 1 and "witness: 101" in err


def test_undecided_exit_code(capsys, monkeypatch):
    from maxvar import cli
    from maxvar.exact import PrecisionExhausted

    def boom(*args):
        raise PrecisionExhausted("overlap at 1024 bits")

    monkeypatch.setattr(cli, "variation_of", boom)
    assert run(capsys, "var", "--builtin", "zero")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--x", "0"],
        ["eval", "--builtin", "nope", "--x", "0"],
        ["eval", "--builtin", "two-bumps", "--c", "4", "--x", "0"],
        ["eval", "--builtin", "zero", "--x", "abc"],
        ["eval", "--file", "/nonexistent/f.txt", "--x", "0"],
        ["verify", "--suite", "other"],
        ["figure", "--builtin", "zero", "--samples", "1"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    with_exit = None
    try:
        with_exit = main(argv)
    except SystemExit as exc:
        with_exit = exc.code
    capsys.readouterr()
    assert with_exit == 3


def test_unwritable_figure_path(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert run(capsys, "figure", "--builtin", "zero", "--out", str(blocker / "sub"))[0] == 3


def _rows(path):
    with open(path) as fh:
        return [line.split() for line in fh if line.strip()]


def test_figure_files(capsys, tmp_path):
    code, out, _ = run(capsys, "figure", "--builtin", "two-bumps", "--c", "3/2", "--out", str(tmp_path))
    assert code == 0
    names = sorted(os.path.basename(p) for p in out.splitlines())
    assert names == ["data_twot_Mf.dat", "data_twot_f.dat"]
    rows = {x: y for x, y in _rows(tmp_path / "data_twot_Mf.dat")}
    assert rows["0"] == "0.333333333333"
    assert rows["0.5"] == rows["-0.5"] == "0.25"
    run(capsys, "figure", "--builtin", "plateau", "--out", str(tmp_path))
    assert dict(_rows(tmp_path / "data_muchvar_Mf.dat"))["0"] == "0.466666666667"
    run(capsys, "figure", "--builtin", "four-bumps", "--out", str(tmp_path))
    assert dict(_rows(tmp_path / "data_defp_Mnotf.dat"))["0"] == "0"


@pytest.mark.parametrize("name", ["two-bumps", "plateau", "four-bumps"])
def test_figure_rows_match_eval(capsys, tmp_path, name):
    run(capsys, "figure", "--builtin", name, "--samples", "17", "--exact", "--out", str(tmp_path))
    spec = figure_spec(name, samples=17)
    for curve in spec.curves:
        if curve.operator is None:
            continue
        rows = _rows(tmp_path / curve.filename)
        assert len(rows) == len(curve_rows(spec, curve))
        for x, y in rows[::3]:
            code, out, _ = run(capsys, "eval", "--builtin", name, f"--x={x}", "--operator", curve.operator)
            assert code == 0 and out == y


def test_figure_from_file(capsys, tmp_path):
    step = tmp_path / "chi.txt"
    step.write_text(builtin("two-bumps").to_text())
    code, out, _ = run(capsys, "figure", "--file", str(step), "--interval", "[-2,2]", "--out", str(tmp_path))
    assert code == 0 and sorted(os.path.basename(p) for p in out.splitlines()) == ["chi_Mf.dat", "chi_f.dat"]


def test_figure_includes_irrational_breakpoints(tmp_path):
    spec = figure_spec("plateau", samples=5)
    rows = curve_rows(spec, spec.curves[1])
    f = spec.function
    for x, y in rows:
        assert evaluate(f, x) == y


def test_console_script():
    exe = shutil.which("maxvar")
    cmd = [exe] if exe else [sys.executable, "-m", "maxvar.cli"]
    res = subprocess.run(cmd + ["eval", "--builtin", "plateau", "--x", "0"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "7/15"


@pytest.mark.parametrize("alias, name", sorted(__import__("maxvar.figures", fromlist=["ALIASES"]).ALIASES.items()))
def test_builtin_aliases(capsys, alias, name):
    a = run(capsys, "eval", "--builtin", alias, "--x", "0")
    b = run(capsys, "eval", "--builtin", name, "--x", "0")
    assert a[0] == 0 and a == b
