"""Finite unions of real intervals with algebraic endpoints."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from .algebraic import RealAlgebraic, compare

Endpoint = Optional[RealAlgebraic]  # None is -inf on the left, +inf on the right


def _ra(x) -> Optional[RealAlgebraic]:
    if x is None or isinstance(x, RealAlgebraic):
        return x
    return RealAlgebraic(Fraction(x))


@dataclass(frozen=True)
class Interval:
    lo: Endpoint
    hi: Endpoint
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", _ra(self.lo))
        object.__setattr__(self, "hi", _ra(self.hi))
        if self.lo is None and self.lo_closed or self.hi is None and self.hi_closed:
            raise ValueError("infinite endpoints are open")

    @classmethod
    def point(cls, a) -> "Interval":
        return cls(a, a, True, True)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    def is_point(self) -> bool:
        return self.lo is not None and self.hi is not None and compare(self.lo, self.hi) == 0

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        c = compare(self.lo, self.hi)
        return c > 0 or (c == 0 and not (self.lo_closed and self.hi_closed))

    def contains(self, x) -> bool:
        x = _ra(x)
        if self.lo is not None:
            c = compare(x, self.lo)
            if c < 0 or (c == 0 and not self.lo_closed):
                return False
        if self.hi is not None:
            c = compare(x, self.hi)
            if c > 0 or (c == 0 and not self.hi_closed):
                return False
        return True

    def __str__(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        lo = "-oo" if self.lo is None else str(self.lo)
        hi = "+oo" if self.hi is None else str(self.hi)
        return f"{lb}{lo}, {hi}{rb}"


def _lo_key_cmp(a: Interval, b: Interval) -> int:
    """Order intervals by their left boundary."""
    if a.lo is None or b.lo is None:
        return (b.lo is None) - (a.lo is None)
    c = compare(a.lo, b.lo)
    if c:
        return c
    # a closed start comes first
    return (b.lo_closed) - (a.lo_closed)


def _hi_cmp(a: Interval, b: Interval) -> int:
    """Compare right boundaries (larger reaches further right)."""
    if a.hi is None or b.hi is None:
        return (a.hi is None) - (b.hi is None)
    c = compare(a.hi, b.hi)
    if c:
        return c
    return a.hi_closed - b.hi_closed


def _touch_or_overlap(a: Interval, b: Interval) -> bool:
    """Whether ``b`` (starting at or after ``a``) merges with ``a``."""
    if a.hi is None or b.lo is None:
        return True
    c = compare(b.lo, a.hi)
    if c < 0:
        return True
    if c > 0:
        return False
    return a.hi_closed or b.lo_closed


class IntervalSet:
    """Sorted, pairwise disjoint, non-adjacent intervals."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[Interval] = ()):
        self.parts: List[Interval] = _normalize(list(parts))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls([Interval(None, None)])

    def is_empty(self) -> bool:
        return not self.parts

    def is_full(self) -> bool:
        return len(self.parts) == 1 and self.parts[0].lo is None and self.parts[0].hi is None

    def contains(self, x) -> bool:
        return any(iv.contains(x) for iv in self.parts)

    def complement(self) -> "IntervalSet":
        out = []
        lo, lo_closed = None, False
        for iv in self.parts:
            if iv.lo is not None:
                out.append(Interval(lo, iv.lo, lo_closed, not iv.lo_closed))
            if iv.hi is None:
                return IntervalSet(out)
            lo, lo_closed = iv.hi, not iv.hi_closed
        out.append(Interval(lo, None, lo_closed, False))
        return IntervalSet(out)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.parts + other.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.parts:
            for b in other.parts:
                lo_src = a if _lo_key_cmp(a, b) >= 0 else b
                hi_src = a if _hi_cmp(a, b) <= 0 else b
                iv = Interval(lo_src.lo, hi_src.hi, lo_src.lo_closed, hi_src.hi_closed)
                if not iv.is_empty():
                    out.append(iv)
        return IntervalSet(out)

    __or__ = union
    __and__ = intersect

    def __invert__(self) -> "IntervalSet":
        return self.complement()

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet) or len(self.parts) != len(other.parts):
            return False
        for a, b in zip(self.parts, other.parts):
            if a.lo_closed != b.lo_closed or a.hi_closed != b.hi_closed:
                return False
            for x, y in ((a.lo, b.lo), (a.hi, b.hi)):
                if (x is None) != (y is None) or (x is not None and compare(x, y) != 0):
                    return False
        return True

    def __repr__(self) -> str:
        if not self.parts:
            return "IntervalSet(empty)"
        return "IntervalSet(" + " u ".join(str(iv) for iv in self.parts) + ")"


def _normalize(parts: List[Interval]) -> List[Interval]:
    parts = [iv for iv in parts if not iv.is_empty()]
    if len(parts) <= 1:
        return parts
    parts.sort(key=functools.cmp_to_key(_lo_key_cmp))
    out = [parts[0]]
    for iv in parts[1:]:
        last = out[-1]
        if _touch_or_overlap(last, iv):
            if _hi_cmp(iv, last) > 0:
                out[-1] = Interval(last.lo, iv.hi, last.lo_closed, iv.hi_closed)
        else:
            out.append(iv)
    return out


def intersect(s: IntervalSet, t: IntervalSet) -> IntervalSet:
    return s.intersect(t)


def union(s: IntervalSet, t: IntervalSet) -> IntervalSet:
    return s.union(t)


def complement(s: IntervalSet) -> IntervalSet:
    return s.complement()


def is_empty(s: IntervalSet) -> bool:
    return s.is_empty()


# ----------------------------------------------------------------------
# sample selection
# ----------------------------------------------------------------------
def _smallest_integer(iv: Interval) -> Optional[int]:
    """Integer of least absolute value in ``iv`` (non-negative on ties)."""
    cands = []
    if iv.contains(0):
        return 0
    if iv.lo is not None and compare(iv.lo, RealAlgebraic(0)) >= 0:
        k = iv.lo.floor()
        for c in (k, k + 1):
            if iv.contains(c):
                cands.append(c)
                break
    elif iv.hi is not None:
        k = iv.hi.floor()
        for c in (k, k - 1):
            if iv.contains(c):
                cands.append(c)
                break
    return cands[0] if cands else None


def _dyadic_inside(iv: Interval) -> Fraction:
    """A dyadic rational strictly inside a bounded interval without integers."""
    lo_cell = Fraction(iv.lo.floor())
    hi_cell = lo_cell + 1
    while True:
        m = (lo_cell + hi_cell) / 2
        if iv.contains(m):
            return m
        if compare(RealAlgebraic(m), iv.lo) <= 0:
            lo_cell = m
        else:
            hi_cell = m


def pick_sample(s: IntervalSet) -> RealAlgebraic:
    """Deterministic element of a non-empty set, preferring small integers."""
    if s.is_empty():
        raise ValueError("cannot sample the empty set")
    best = None
    for iv in s.parts:
        k = _smallest_integer(iv)
        if k is not None and (best is None or abs(k) < abs(best) or (abs(k) == abs(best) and k > best)):
            best = k
    if best is not None:
        return RealAlgebraic(best)
    # no integers: every part is bounded
    for iv in s.parts:
        if iv.lo.is_rational and iv.hi.is_rational:
            if iv.is_point():
                return iv.lo
            return RealAlgebraic(_dyadic_inside(iv))
    iv = s.parts[0]
    if iv.is_point():
        return iv.lo
    return RealAlgebraic(_dyadic_inside(iv))
