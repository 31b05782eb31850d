"""Exact real algebraic numbers, root isolation and interval sets."""

from .algebraic import RealAlgebraic, compare, rational_between, rational_to_smtlib
from .evaluation import (
    AlgebraicPoly,
    ZeroPolynomialError,
    eval_partial,
    isolate_roots,
    sign_at_point,
    value_at_point,
)
from .intervals import Interval, IntervalSet, complement, intersect, is_empty, pick_sample, union

__all__ = [
    "AlgebraicPoly",
    "Interval",
    "IntervalSet",
    "RealAlgebraic",
    "ZeroPolynomialError",
    "compare",
    "complement",
    "eval_partial",
    "intersect",
    "is_empty",
    "isolate_roots",
    "pick_sample",
    "rational_between",
    "rational_to_smtlib",
    "sign_at_point",
    "union",
    "value_at_point",
]
