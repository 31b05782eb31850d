"""Exact real algebraic numbers.

A value is either a rational or an irrational root of a square-free
integer polynomial isolated in an open rational interval whose endpoints
are not roots.  Isolating intervals are narrowed in place as a cache: the
number represented never changes, so sharing instances is safe.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import List, Optional, Sequence, Tuple, Union

from . import upoly

Rational = Union[int, Fraction]


@total_ordering
class RealAlgebraic:
    __slots__ = ("_q", "_f", "_iv")

    def __init__(self, value: Rational = 0):
        self._q: Optional[Fraction] = Fraction(value)
        self._f: Tuple[int, ...] = ()
        self._iv: Tuple[Fraction, Fraction] = (self._q, self._q)

    @classmethod
    def root_of(cls, f: Sequence, lo: Fraction, hi: Fraction) -> "RealAlgebraic":
        """The unique root of square-free ``f`` in ``(lo, hi)`` (or ``lo`` if ``lo == hi``)."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return cls(lo)
        f = upoly.primitive(f)
        q, lo, hi = upoly.rational_root_in(f, lo, hi)
        if q is not None:
            return cls(q)
        a = cls.__new__(cls)
        a._q = None
        a._f = tuple(f)
        a._iv = (lo, hi)
        return a

    @classmethod
    def roots(cls, f: Sequence) -> List["RealAlgebraic"]:
        """All distinct real roots of a nonzero rational polynomial, increasing."""
        g = upoly.sqf_part(f)
        return [cls.root_of(g, lo, hi) for lo, hi in upoly.isolate_real_roots(g)]

    # -- accessors -----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self._q is not None

    @property
    def rational(self) -> Fraction:
        if self._q is None:
            raise ValueError("irrational algebraic number")
        return self._q

    @property
    def defining(self) -> Tuple[int, ...]:
        """Square-free integer polynomial (low degree first) with this root."""
        if self._q is not None:
            q = self._q
            return (-q.numerator, q.denominator)
        return self._f

    @property
    def interval(self) -> Tuple[Fraction, Fraction]:
        return self._iv

    def refine(self) -> None:
        """Halve the isolating interval (no-op for rationals)."""
        if self._q is not None:
            return
        lo, hi = upoly.refine(self._f, *self._iv)
        self._iv = (lo, hi)

    def refine_to(self, width: Fraction) -> None:
        while self._q is None and self._iv[1] - self._iv[0] > width:
            self.refine()

    def sign(self) -> int:
        if self._q is not None:
            return upoly.sign(self._q)
        while True:
            lo, hi = self._iv
            if lo >= 0:
                return 1
            if hi <= 0:
                return -1
            self.refine()

    def floor(self) -> int:
        if self._q is not None:
            return self._q.__floor__()
        while True:
            lo, hi = self._iv
            fl = lo.__floor__()
            if hi <= fl + 1:
                return fl
            self.refine()

    def approx(self) -> float:
        if self._q is not None:
            return float(self._q)
        self.refine_to(Fraction(1, 1 << 60))
        lo, hi = self._iv
        return float((lo + hi) / 2)

    __float__ = approx

    def __neg__(self) -> "RealAlgebraic":
        if self._q is not None:
            return RealAlgebraic(-self._q)
        f = [c if i % 2 == 0 else -c for i, c in enumerate(self._f)]
        lo, hi = self._iv
        a = RealAlgebraic.__new__(RealAlgebraic)
        a._q = None
        a._f = tuple(upoly.primitive(f))
        a._iv = (-hi, -lo)
        return a

    # -- ordering ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._q is not None and self._q == other
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return compare(self, other) == 0

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RealAlgebraic(other)
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self) -> int:
        if self._q is not None:
            return hash(self._q)
        # irrationals are never integers, so the floor is well defined and
        # equal numbers share it
        return hash(("alg", self.floor()))

    def __repr__(self) -> str:
        if self._q is not None:
            return f"RealAlgebraic({self._q})"
        return f"RealAlgebraic(root of {list(self._f)} in ({self._iv[0]}, {self._iv[1]}))"

    def __str__(self) -> str:
        if self._q is not None:
            return str(self._q)
        return f"~{self.approx():.6g}"

    # -- rendering -----------------------------------------------------
    def root_index(self) -> int:
        """1-based index of this number among the real roots of ``defining``."""
        if self._q is not None:
            return 1
        for i, r in enumerate(RealAlgebraic.roots(self._f), start=1):
            if compare(r, self) == 0:
                return i
        raise AssertionError("number is not a root of its defining polynomial")

    def to_smtlib(self, var: str = "x") -> str:
        if self._q is not None:
            return rational_to_smtlib(self._q)
        terms = []
        for k in range(len(self._f) - 1, -1, -1):
            c = self._f[k]
            if not c:
                continue
            coef = rational_to_smtlib(Fraction(c))
            if k == 0:
                terms.append(coef)
                continue
            mono = var if k == 1 else f"(* {' '.join([var] * k)})"
            terms.append(mono if c == 1 else f"(* {coef} {mono})")
        body = terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"
        return f"(root-obj {body} {self.root_index()})"


def rational_to_smtlib(q: Fraction) -> str:
    q = Fraction(q)
    n, d = abs(q.numerator), q.denominator
    body = str(n) if d == 1 else f"(/ {n} {d})"
    return f"(- {body})" if q < 0 else body


def _disjoint_order(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """Refine both until their intervals separate (they must differ)."""
    while True:
        alo, ahi = a._iv
        blo, bhi = b._iv
        if ahi <= blo and not (a._q is not None and b._q is not None and ahi == blo):
            return -1
        if bhi <= alo and not (a._q is not None and b._q is not None and bhi == alo):
            return 1
        a.refine()
        b.refine()


def compare(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if a._q is not None and b._q is not None:
        return (a._q > b._q) - (a._q < b._q)
    if a._q is None and b._q is None:
        return _compare_irrational(a, b)
    if a._q is not None:
        return -compare(b, a)
    # a irrational, b rational
    q = b._q
    lo, hi = a._iv
    if q <= lo:
        return 1
    if q >= hi:
        return -1
    # q is inside the isolating interval and is not a root of a's polynomial
    return 1 if upoly.sign_at(a._f, q) == upoly.sign_at(a._f, lo) else -1


def _compare_irrational(a: RealAlgebraic, b: RealAlgebraic) -> int:
    if a._f == b._f:
        alo, ahi = a._iv
        blo, bhi = b._iv
        if max(alo, blo) < min(ahi, bhi):
            lo, hi = max(alo, blo), min(ahi, bhi)
            if upoly.sign_at(a._f, lo) != upoly.sign_at(a._f, hi):
                return 0
        return _disjoint_order(a, b)
    alo, ahi = a._iv
    blo, bhi = b._iv
    if ahi <= blo:
        return -1
    if bhi <= alo:
        return 1
    g = upoly.gcd(a._f, b._f)
    if len(g) >= 2:
        changes_a = upoly.sign_at(g, alo) != upoly.sign_at(g, ahi)
        changes_b = upoly.sign_at(g, blo) != upoly.sign_at(g, bhi)
        if changes_a and changes_b:
            lo, hi = max(alo, blo), min(ahi, bhi)
            if upoly.sign_at(g, lo) != upoly.sign_at(g, hi):
                return 0
    return _disjoint_order(a, b)


def sign_upoly_at(f: Sequence, a: RealAlgebraic) -> int:
    """Exact sign of a rational univariate polynomial at ``a``."""
    f = upoly.strip(f)
    if not f:
        return 0
    if a._q is not None:
        return upoly.sign_at(f, a._q)
    if len(f) == 1:
        return upoly.sign(f[0])
    g = upoly.gcd(f, a._f)
    lo, hi = a._iv
    if len(g) >= 2 and upoly.sign_at(g, lo) != upoly.sign_at(g, hi):
        return 0
    while True:
        lo, hi = a._iv
        if upoly.descartes_bound(f, lo, hi) == 0 and upoly.evaluate(f, lo) != 0 and upoly.evaluate(f, hi) != 0:
            return upoly.sign_at(f, lo)
        a.refine()


def rational_between(a: RealAlgebraic, b: RealAlgebraic) -> Fraction:
    """A simple rational strictly between ``a < b`` (dyadic bisection)."""
    lo_cell = Fraction(a.floor())
    hi_cell = lo_cell + 1
    bq = RealAlgebraic(0)
    while True:
        m = (lo_cell + hi_cell) / 2
        bq._q = m
        bq._iv = (m, m)
        if compare(a, bq) < 0:
            if compare(bq, b) < 0:
                return m
            hi_cell = m
        else:
            lo_cell = m
