"""Exact centred maximal functions of step functions and their variation."""

from .continuous import (
    Mobius,
    MobiusPiece,
    PiecewiseMobius,
    attachment_set,
    candidates,
    canonical_representative,
    envelope,
    eval_mf,
    evaluate,
    m0_eval,
    m1_eval,
    variation_mf,
    variation_of,
)
from .discrete import (
    DiscreteInterval,
    LatticeFunction,
    brute_mf,
    discrete_m0,
    discrete_m1,
    discrete_mf,
    discrete_var,
    discrete_var_mf,
    embed_to_step,
)
from .estimator import MaximalFunction
from .exact import (
    AlgebraicSum,
    CertifiedInterval,
    Ordering,
    PrecisionExhausted,
    QuadraticValue,
    compare_sums,
    solve_quadratic,
)
from .stepfn import RealInterval, StepFunction, affine_pullback, make_indicator, variation
from .verify import (
    HypothesisCheck,
    HypothesisError,
    Verdict,
    VerificationReport,
    check_continuous,
    check_discrete,
    check_local_bound,
    check_prop_abcd,
    exhaustive_discrete_sweep,
    generate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
