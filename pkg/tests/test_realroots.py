import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dnlsat.algebra import Polynomial
from dnlsat.realroots import (Interval, IntervalSet, RealAlgebraic, ZeroPolynomialError, compare, isolate_roots,
                              pick_sample, rational_between, sign_at_point, value_at_point)
from dnlsat.realroots import upoly
from oracles import bisection_roots, square_free

SQRT2 = RealAlgebraic.roots([-2, 0, 1])[1]
x, y, z = (Polynomial.var(i) for i in range(3))

small_polys = st.lists(st.integers(-20, 20), min_size=2, max_size=7).filter(lambda f: any(f[1:]))
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def agrees_with_oracle(f) -> bool:
    ours = RealAlgebraic.roots(f)
    ivs = bisection_roots(square_free(f))
    if len(ours) != len(ivs):
        return False
    for r, (a, b) in zip(ours, ivs):
        if a == b:
            if compare(r, RealAlgebraic(a)) != 0:
                return False
        elif not (compare(r, RealAlgebraic(a)) > 0 and compare(r, RealAlgebraic(b)) < 0):
            return False
    return True


@given(small_polys)
@settings(max_examples=150, deadline=None)
def test_isolation_matches_bisection_oracle(f):
    assert agrees_with_oracle(f)


def test_isolation_known_roots():
    assert [r.rational for r in RealAlgebraic.roots([-6, 11, -6, 1])] == [1, 2, 3]
    rs = RealAlgebraic.roots([-2, 0, 1])
    assert len(rs) == 2 and not rs[0].is_rational
    assert compare(rs[0], -rs[1]) == 0
    assert RealAlgebraic.roots([1, 0, 1]) == []


def test_separate_keeps_every_root():
    # regression: sub-interval root counts from Descartes' rule are only bounds,
    # and endpoint separation once dropped a root that sat near an endpoint
    f = [0, -4, 0, 1]  # roots -2, 0, 2 with 0 and 2 on dyadic endpoints
    assert [r.rational for r in RealAlgebraic.roots(f)] == [-2, 0, 2]
    g = upoly.mul([-1, 3], [-2, 0, 1])  # 1/3 next to sqrt 2
    rs = RealAlgebraic.roots(g)
    assert len(rs) == 3 and rs[1].rational == Fraction(1, 3)


def test_compare_irrational_with_rational_inside_interval():
    # regression: the comparison used to flip when the rational sat inside
    # the isolating interval, which looped rational_between forever
    a = RealAlgebraic.root_of([-2, 0, 1], Fraction(1), Fraction(2))
    assert compare(a, RealAlgebraic(Fraction(3, 2))) < 0
    assert compare(a, RealAlgebraic(Fraction(7, 5))) > 0
    assert compare(RealAlgebraic(Fraction(7, 5)), a) < 0
    q = rational_between(RealAlgebraic(Fraction(7, 5)), a)
    assert Fraction(7, 5) < q and q * q < 2


@given(rationals, rationals)
def test_compare_rationals(a, b):
    assert compare(RealAlgebraic(a), RealAlgebraic(b)) == (a > b) - (a < b)


@given(st.integers(2, 30).filter(lambda n: int(n ** 0.5) ** 2 != n), rationals)
def test_compare_sqrt_against_rational(n, q):
    r = RealAlgebraic.roots([-n, 0, 1])[1]
    expected = 1 if (q < 0 or q * q < n) else -1
    assert compare(r, RealAlgebraic(q)) == expected


def test_rational_roots_detected():
    # (3x - 1)(x^2 - 2): the rational root comes back as an exact rational
    rs = RealAlgebraic.roots(upoly.mul([-1, 3], [-2, 0, 1]))
    assert [r.is_rational for r in rs] == [False, True, False]
    big = upoly.mul([-7, 10 ** 12], [-3, 0, 1])
    assert any(r.is_rational and r.rational == Fraction(7, 10 ** 12) for r in RealAlgebraic.roots(big))


def test_homogeneous_sign_matches_fraction_evaluation():
    rng = random.Random(2)
    for _ in range(500):
        f = [rng.randint(-9, 9) for _ in range(rng.randint(1, 8))]
        q = Fraction(rng.randint(-50, 50), rng.randint(1, 40))
        assert upoly.sign_at(f, q) == upoly.sign(upoly.evaluate(f, q))


def test_value_and_sign_at_algebraic_points():
    pt = {0: SQRT2, 1: RealAlgebraic(3)}
    assert sign_at_point(x * x - 2, pt) == 0
    assert sign_at_point(x - y, pt) == -1
    v = value_at_point(x * x * x, pt)  # 2 sqrt 2
    assert compare(v, RealAlgebraic(Fraction(282, 100))) > 0 and compare(v, RealAlgebraic(Fraction(283, 100))) < 0
    sqrt3 = RealAlgebraic.roots([-3, 0, 1])[1]
    pt2 = {0: SQRT2, 1: sqrt3}
    assert sign_at_point(x * x * y * y - 6, pt2) == 0
    assert sign_at_point(x * y - 2, pt2) == 1


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), rationals)
@settings(max_examples=60, deadline=None)
def test_isolate_roots_with_rational_sample(cs, a):
    p = y * x * x + Polynomial.from_coefficients([Polynomial.const(c) for c in cs], 0)
    try:
        roots = isolate_roots(p, 0, {1: RealAlgebraic(a)})
    except ZeroPolynomialError:
        assert p.subs({1: a}).is_zero()
        return
    q = p.subs({1: a})
    dense = [Fraction(c.constant_value()) for c in reversed(q.coefficients_in(0))]
    expected = RealAlgebraic.roots(dense) if q.degree_in(0) > 0 else []
    assert len(roots) == len(expected)
    assert all(compare(r, e) == 0 for r, e in zip(roots, expected))


def test_isolate_roots_over_irrational_sample():
    # x^2 - y with y = sqrt 2 has roots +-2^(1/4)
    rs = isolate_roots(x * x - y, 0, {1: SQRT2})
    assert len(rs) == 2
    for r in rs:
        assert sign_at_point(x * x * x * x - 2, {0: r}) == 0
    with pytest.raises(ZeroPolynomialError):
        isolate_roots((y * y - 2) * x, 0, {1: SQRT2})


def test_root_obj_rendering():
    assert SQRT2.to_smtlib() == "(root-obj (+ (* x x) (- 2)) 2)"
    assert RealAlgebraic(Fraction(-3, 4)).to_smtlib() == "(- (/ 3 4))"


# ----------------------------------------------------------------------
# interval sets
# ----------------------------------------------------------------------
def _interval(a, b, lc, hc):
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return Interval.point(lo)
    return Interval(RealAlgebraic(lo), RealAlgebraic(hi), lc, hc)


intervals = st.builds(_interval, st.integers(-6, 6), st.integers(-6, 6), st.booleans(), st.booleans())
isets = st.lists(intervals, max_size=4).map(IntervalSet)
probe_points = [Fraction(k, 2) for k in range(-16, 17)]


def member(s: IntervalSet):
    return [s.contains(RealAlgebraic(p)) for p in probe_points]


@given(isets, isets)
def test_interval_set_laws(s, t):
    assert member(s & t) == [a and b for a, b in zip(member(s), member(t))]
    assert member(s | t) == [a or b for a, b in zip(member(s), member(t))]
    assert member(~s) == [not a for a in member(s)]
    assert ~~s == s
    assert ~(s | t) == (~s) & (~t)
    assert (s & ~s).is_empty()
    assert (s | ~s).is_full()


@given(isets)
def test_pick_sample_is_member(s):
    assume(not s.is_empty())
    v = pick_sample(s)
    assert s.contains(v)


def test_pick_sample_prefers_simple_values():
    assert pick_sample(IntervalSet([Interval.open(-SQRT2, SQRT2)])).rational == 0
    assert pick_sample(IntervalSet([Interval.open(Fraction(1, 3), Fraction(1, 2))])).rational == Fraction(3, 8)
    assert pick_sample(IntervalSet([Interval.open(-5, Fraction(-7, 2))])).rational == -4
    v = pick_sample(IntervalSet([Interval.point(SQRT2)]))
    assert compare(v, SQRT2) == 0
    assert pick_sample(IntervalSet.full()).rational == 0
