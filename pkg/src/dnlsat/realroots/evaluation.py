"""Multivariate polynomials evaluated at real algebraic points.

Irrational coordinates are eliminated with resultants against their
defining polynomials, which yields rational univariate polynomials whose
roots contain the quantity of interest; the true value is then singled
out by interval evaluation on refined isolating boxes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Tuple, Union

from ..algebra import Monomial, Polynomial, resultant_general
from . import upoly
from .algebraic import RealAlgebraic, sign_upoly_at

Assignment = Mapping[int, RealAlgebraic]


class ZeroPolynomialError(ValueError):
    """The polynomial vanishes identically under the assignment."""


def _rational_part(p: Polynomial, a: Assignment) -> Polynomial:
    vals = {}
    for v in p.vars:
        r = a.get(v)
        if r is not None and r.is_rational:
            vals[v] = r.rational
    return p.subs(vals) if vals else p


def _dense(p: Polynomial, v: int) -> list:
    """Dense low-first coefficients of a polynomial whose only variable is ``v``."""
    coeffs = p.coefficients_in(v)
    return upoly.strip([c.constant_value() for c in reversed(coeffs)])


def _from_dense(f, v: int) -> Polynomial:
    return Polynomial({((v, k),) if k else (): c for k, c in enumerate(f) if c})


# ----------------------------------------------------------------------
# interval arithmetic on boxes
# ----------------------------------------------------------------------
def _ipow(iv: Tuple[Fraction, Fraction], e: int) -> Tuple[Fraction, Fraction]:
    lo, hi = iv
    a, b = lo ** e, hi ** e
    if e % 2 == 0 and lo < 0 < hi:
        return Fraction(0), max(a, b)
    return (a, b) if a <= b else (b, a)


def interval_eval(p: Polynomial, box: Mapping[int, Tuple[Fraction, Fraction]]) -> Tuple[Fraction, Fraction]:
    lo_sum = Fraction(0)
    hi_sum = Fraction(0)
    for m, c in p.items():
        lo = hi = Fraction(c)
        for v, e in m:
            plo, phi = _ipow(box[v], e)
            cands = (lo * plo, lo * phi, hi * plo, hi * phi)
            lo, hi = min(cands), max(cands)
        lo_sum += lo
        hi_sum += hi
    return lo_sum, hi_sum


def _box(vs, a: Assignment):
    return {v: a[v].interval for v in vs}


# ----------------------------------------------------------------------
# values and signs
# ----------------------------------------------------------------------
def sign_at_point(p: Polynomial, a: Assignment) -> int:
    """Exact sign of ``p`` at a point assigning every variable of ``p``."""
    q = _rational_part(p, a)
    if q.is_constant():
        return upoly.sign(q.constant_value())
    ys = sorted(q.vars)
    if len(ys) == 1:
        return sign_upoly_at(_dense(q, ys[0]), a[ys[0]])
    key = (q, tuple(id(a[y]) for y in ys))
    hit = _SIGN_CACHE.get(key)
    if hit is not None and all(r is a[y] for r, y in zip(hit[1], ys)):
        return hit[0]
    s = _sign_multi(q, ys, a)
    if len(_SIGN_CACHE) > 50000:
        _SIGN_CACHE.clear()
    _SIGN_CACHE[key] = (s, tuple(a[y] for y in ys))
    return s


# (poly, ids of the coordinate values) -> (sign, the values themselves)
_SIGN_CACHE: Dict[tuple, tuple] = {}


def _sign_multi(q: Polynomial, ys, a: Assignment) -> int:
    for _ in range(10):
        lo, hi = interval_eval(q, _box(ys, a))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        for y in ys:
            a[y].refine()
    return value_at_point(q, a).sign()


def value_at_point(p: Polynomial, a: Assignment) -> RealAlgebraic:
    """Exact value of ``p`` at a point assigning every variable of ``p``."""
    q = _rational_part(p, a)
    if q.is_constant():
        return RealAlgebraic(q.constant_value())
    ys = sorted(q.vars)
    t = max(ys) + 1
    acc = Polynomial.var(t) - q
    # small extensions first keeps the intermediate polynomials small
    for y in sorted(ys, key=lambda v: (len(a[v].defining), v)):
        acc = resultant_general(_from_dense(a[y].defining, y), acc, y)
    cands = RealAlgebraic.roots(_dense(acc, t))
    while True:
        lo, hi = interval_eval(q, _box(ys, a))
        hits = []
        for c in cands:
            clo, chi = c.interval
            if c.is_rational:
                if lo <= clo <= hi:
                    hits.append(c)
            elif clo < hi and lo < chi:
                hits.append(c)
        if len(hits) == 1:
            return hits[0]
        for y in ys:
            a[y].refine()
        for c in hits:
            c.refine()


# ----------------------------------------------------------------------
# roots under a partial assignment
# ----------------------------------------------------------------------
def _strip_zero_root(f) -> list:
    f = list(f)
    while f and f[0] == 0:
        f.pop(0)
    return upoly.primitive(f)


def isolate_roots(p: Polynomial, x: int, a: Assignment) -> List[RealAlgebraic]:
    """Distinct real roots in ``x`` of ``p`` with the other variables at ``a``.

    Raises :class:`ZeroPolynomialError` when ``p`` vanishes identically in ``x``.
    """
    a = {v: r for v, r in a.items() if v != x}
    q = _rational_part(p, a)
    ys = sorted(q.vars - {x})
    if not ys:
        if q.is_zero():
            raise ZeroPolynomialError("polynomial is identically zero")
        if x not in q.vars:
            return []
        return RealAlgebraic.roots(_dense(q, x))
    coeffs = q.coefficients_in(x)
    lead = 0
    while lead < len(coeffs) and sign_at_point(coeffs[lead], a) == 0:
        lead += 1
    if lead == len(coeffs):
        raise ZeroPolynomialError("polynomial vanishes at the assignment")
    if lead == len(coeffs) - 1:
        return []
    if len(ys) == 1:
        y = ys[0]
        g: list = []
        for c in coeffs:
            g = upoly.gcd(g, _dense(c, y)) if g else upoly.primitive(_dense(c, y))
            if len(g) <= 1:
                break
        f = list(a[y].defining)
        if len(g) >= 2:
            common = upoly.gcd(f, g)
            if len(common) >= 2:
                f = upoly.primitive(upoly.divmod_(f, common)[0])
        res = resultant_general(_from_dense(f, y), q, y)
    else:
        z = max(max(ys), x) + 1
        res = Polynomial()
        elim = []
        d = len(coeffs) - 1
        for i in range(lead, len(coeffs)):
            k = d - i
            val = value_at_point(coeffs[i], a)
            xk = Polynomial.var(x, k) if k else Polynomial.const(1)
            if val.is_rational:
                res = res + xk * val.rational
            else:
                res = res + xk * Polynomial.var(z)
                elim.append((z, _strip_zero_root(val.defining)))
                z += 1
        for zv, g in elim:
            res = resultant_general(_from_dense(g, zv), res, zv)
    dense = _dense(res, x)
    if not dense:
        raise AssertionError("elimination produced the zero polynomial")
    out = []
    for r in RealAlgebraic.roots(dense):
        point = dict(a)
        point[x] = r
        if sign_at_point(p, point) == 0:
            out.append(r)
    return out


class AlgebraicPoly:
    """Polynomial in the unassigned variables with algebraic coefficients."""

    def __init__(self, terms: Dict[Monomial, RealAlgebraic]):
        self.terms = terms

    @property
    def vars(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def __repr__(self) -> str:
        return f"AlgebraicPoly({self.terms!r})"


def eval_partial(p: Polynomial, a: Assignment) -> Union[Polynomial, RealAlgebraic, AlgebraicPoly]:
    """Substitute assigned variables exactly.

    Fully assigned polynomials yield a :class:`RealAlgebraic`; when only
    rational values were substituted the result is again a Polynomial.
    """
    q = _rational_part(p, a)
    free = q.vars - a.keys()
    if not free:
        return value_at_point(q, a)
    irr = q.vars & a.keys()
    if not irr:
        return q
    grouped: Dict[Monomial, Dict[Monomial, object]] = {}
    for m, c in q.items():
        fm = tuple(t for t in m if t[0] in free)
        am = tuple(t for t in m if t[0] not in free)
        grouped.setdefault(fm, {})[am] = c
    out = {}
    for fm, sub in grouped.items():
        val = value_at_point(Polynomial(sub), a)
        if val.sign() != 0:
            out[fm] = val
    return AlgebraicPoly(out)

