"""A scikit-learn style wrapper around the exact maximal operators."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .continuous import OPERATORS, pointwise
from .discrete import LatticeFunction, discrete_m0, discrete_m1, discrete_mf
from .exact import as_fraction
from .stepfn import StepFunction


def check_function(f):
    """Accept a StepFunction, a LatticeFunction, or the text form of either."""
    if isinstance(f, (StepFunction, LatticeFunction)):
        return f
    if isinstance(f, str):
        return LatticeFunction.from_text(f) if ";" in f else StepFunction.from_text(f)
    raise TypeError(f"expected a StepFunction, LatticeFunction or its text form, got {type(f).__name__}")


def check_points(points) -> list[Fraction]:
    """Flatten points into exact rationals; floats are taken at face value."""
    arr = np.asarray(points, dtype=object)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d array of points, got shape {arr.shape}")
    return [as_fraction(x) for x in arr]


def check_operator(operator: str) -> str:
    if operator not in OPERATORS:
        raise ValueError(f"operator must be one of {OPERATORS}, got {operator!r}")
    return operator


class MaximalFunction(TransformerMixin, BaseEstimator):
    """Maps sample points to exact values of Mf, M0f or M1f.

    ``fit`` stores the function; ``transform`` returns an object array of
    Fractions, one per point.
    """

    def __init__(self, operator="M", a=1):
        self.operator = operator
        self.a = a

    def fit(self, f, y=None):
        check_operator(self.operator)
        self.function_ = check_function(f)
        self.a_ = as_fraction(self.a)
        return self

    def _evaluator(self):
        f = self.function_
        if isinstance(f, LatticeFunction):
            if self.operator == "M":
                return lambda n: discrete_mf(f, n)
            if self.operator == "M0":
                return lambda n: discrete_m0(f, n, self.a_)
            return lambda n: discrete_m1(f, n, self.a_)
        return pointwise(self.operator, f, self.a_)

    def transform(self, points):
        if not hasattr(self, "function_"):
            raise NotFittedError("MaximalFunction is not fitted yet; call fit(f) first")
        ev = self._evaluator()
        out = np.empty(len(pts := check_points(points)), dtype=object)
        for i, x in enumerate(pts):
            out[i] = ev(x)
        return out
