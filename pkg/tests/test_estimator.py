from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from maxvar.discrete import LatticeFunction
from maxvar.estimator import MaximalFunction, check_function, check_points
from maxvar.figures import four_bumps, two_bumps
from maxvar.stepfn import make_indicator

F = Fraction


def test_params_round_trip():
    est = MaximalFunction(operator="M1", a=2)
    assert est.get_params() == {"operator": "M1", "a": 2}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and not hasattr(twin, "function_")
    est.set_params(operator="M0")
    assert est.operator == "M0"


def test_transform_step_function():
    est = MaximalFunction().fit(two_bumps(F(3, 2)))
    out = est.transform([0, F(1, 2), "-1/2"])
    assert out.dtype == object and list(out) == [F(1, 3), F(1, 4), F(1, 4)]
    assert list(est.transform(np.array([[0], [F(1, 2)]], dtype=object))) == [F(1, 3), F(1, 4)]


def test_restricted_operators():
    assert list(MaximalFunction("M1").fit(four_bumps()).transform([0])) == [F(2, 5)]
    assert list(MaximalFunction("M0").fit(four_bumps()).transform([0])) == [0]


def test_lattice_functions():
    assert list(MaximalFunction().fit("0; 0; 1 @ 0; 0").transform([1])) == [F(1, 3)]
    est = MaximalFunction().fit(LatticeFunction.indicator([0]))
    assert list(est.transform([0, 1, -2])) == [1, F(1, 3), F(1, 5)]


def test_step_function_text():
    est = MaximalFunction().fit(make_indicator([(0, 1)]).to_text())
    assert list(est.transform([2])) == [F(1, 4)]


def test_not_fitted():
    with pytest.raises(NotFittedError):
        MaximalFunction().transform([0])


def test_validation():
    with pytest.raises(ValueError):
        MaximalFunction(operator="X").fit(make_indicator([(0, 1)]))
    with pytest.raises(TypeError):
        check_function(3)
    with pytest.raises(ValueError):
        check_points(np.zeros((2, 2)))
    assert check_points([0.5]) == [F(1, 2)]
