"""Dense univariate polynomials over Q and real root isolation.

A polynomial is a list of coefficients, lowest degree first, without
trailing zeros (``[]`` is zero).  Root isolation is the Descartes /
Vincent bisection method on the square-free part, starting from the
Cauchy bound.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import List, Optional, Sequence, Tuple

UPoly = List


def strip(f: Sequence) -> list:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    return len(f) - 1


def evaluate(f: Sequence, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_at(f: Sequence, x) -> int:
    if type(x) is Fraction and f and all(type(c) is int for c in f):
        return sign(homogeneous_value(f, x.numerator, x.denominator))
    return sign(evaluate(f, x))


def homogeneous_value(f: Sequence[int], n: int, d: int) -> int:
    """``d**deg * f(n/d)`` in integer arithmetic; same sign as ``f(n/d)`` for ``d > 0``."""
    acc = f[-1]
    dp = 1
    for c in reversed(f[:-1]):
        dp *= d
        acc = acc * n + c * dp
    return acc


def derivative(f: Sequence) -> list:
    return [i * f[i] for i in range(1, len(f))]


def add(f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    return strip([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def sub(f: Sequence, g: Sequence) -> list:
    return add(f, [-c for c in g])


def mul(f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return strip(out)


def divmod_(f: Sequence, g: Sequence) -> Tuple[list, list]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = [Fraction(c) for c in f]
    dg = len(g) - 1
    lc = Fraction(g[-1])
    q = [Fraction(0)] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg and r:
        k = len(r) - 1 - dg
        c = r[-1] / lc
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] -= c * b
        r = strip(r)
    return strip(q), r


def _int_prem(f: List[int], g: List[int]) -> List[int]:
    """Pseudo-remainder of integer polynomials: lc(g)^k * f mod g."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    while len(r) - 1 >= dg and r:
        c = r[-1]
        k = len(r) - 1 - dg
        r = [x * lc for x in r]
        for i, b in enumerate(g):
            r[i + k] -= c * b
        r = strip(r)
    return r


def gcd(f: Sequence, g: Sequence) -> list:
    """Monic gcd over Q (primitive remainder sequence on integers)."""
    a, b = primitive(f), primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, primitive(_int_prem(a, b))
    if not a:
        return []
    lc = Fraction(a[-1])
    return [Fraction(c) / lc for c in a]


def primitive(f: Sequence) -> list:
    """Integer coefficients, content 1, positive leading coefficient."""
    f = strip(f)
    if not f:
        return []
    den = 1
    for c in f:
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = igcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def sqf_part(f: Sequence) -> list:
    f = strip(f)
    if len(f) <= 2:
        return primitive(f)
    g = gcd(f, derivative(f))
    if len(g) <= 1:
        return primitive(f)
    return primitive(divmod_(f, g)[0])


def compose_linear(f: Sequence, a, b) -> list:
    """Coefficients of ``f(a + b*x)``."""
    out: list = []
    for c in reversed(f):
        # out = out * (a + b x) + c
        nxt = [0] * (len(out) + 1)
        for i, o in enumerate(out):
            nxt[i] += o * a
            nxt[i + 1] += o * b
        nxt[0] += c
        out = nxt
    return strip(out)


def taylor_shift1(f: Sequence) -> list:
    """Coefficients of ``f(x + 1)``."""
    g = list(f)
    n = len(g)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            g[j] += g[j + 1]
    return g


def variations(f: Sequence) -> int:
    prev = 0
    count = 0
    for c in f:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def descartes_bound(f: Sequence, lo, hi) -> int:
    """Upper bound on the roots of ``f`` in the open interval ``(lo, hi)``.

    Exact when the result is 0 or 1.
    """
    f = primitive(f)
    if not f:
        raise ValueError("zero polynomial")
    lo, w = Fraction(lo), Fraction(hi) - Fraction(lo)
    d = lo.denominator * w.denominator // igcd(lo.denominator, w.denominator)
    a, b = lo.numerator * (d // lo.denominator), w.numerator * (d // w.denominator)
    # d^n f((a + b x) / d) by homogeneous Horner, all in integers
    out = [f[-1]]
    dk = 1
    for c in reversed(f[:-1]):
        dk *= d
        nxt = [0] * (len(out) + 1)
        for i, o in enumerate(out):
            nxt[i] += o * a
            nxt[i + 1] += o * b
        nxt[0] += c * dk
        out = nxt
    return variations(taylor_shift1(list(reversed(out))))


def cauchy_bound(f: Sequence) -> Fraction:
    lc = abs(Fraction(f[-1]))
    return 1 + max((abs(Fraction(c)) / lc for c in f[:-1]), default=Fraction(0))


def _int_descartes(g: List[int]) -> int:
    return variations(taylor_shift1(list(reversed(g))))


def isolate_real_roots(f: Sequence) -> List[Tuple[Fraction, Fraction]]:
    """Isolate the distinct real roots of a nonzero polynomial.

    Returns increasing ``(lo, hi)`` pairs; ``lo == hi`` marks an exact
    rational root, otherwise the root is the unique root of the square-free
    part in the open interval and neither endpoint is a root.
    """
    f = sqf_part(f)
    if not f:
        raise ValueError("zero polynomial has no isolated roots")
    if len(f) == 1:
        return []
    B = cauchy_bound(f)
    B = Fraction(1 << max(int(B).bit_length(), 1))
    # t in (0, 1) <-> x = -B + 2B t
    g = primitive(compose_linear(f, -B, 2 * B))
    n = len(g) - 1
    out: List[Tuple[Fraction, Fraction]] = []

    def to_x(t: Fraction) -> Fraction:
        return -B + 2 * B * t

    def rec(h: List[int], c: int, k: int) -> None:
        v = _int_descartes(h)
        if v == 0:
            return
        if v == 1:
            out.append((to_x(Fraction(c, 1 << k)), to_x(Fraction(c + 1, 1 << k))))
            return
        # 2^n h(x/2) covers the left half, its shift by one the right half
        left = [h[i] << (n - i) for i in range(len(h))]
        rec(left, 2 * c, k + 1)
        if sum(left) == 0:
            x = to_x(Fraction(2 * c + 1, 1 << (k + 1)))
            out.append((x, x))
        rec(taylor_shift1(left), 2 * c + 1, k + 1)

    rec(g, 0, 0)
    return [_separate(f, lo, hi) for lo, hi in out]


def _separate(f: Sequence, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink ``(lo, hi)`` so that neither endpoint is a root of ``f``.

    ``f`` is square-free with exactly one root inside the open interval, so
    its sign just right of ``lo`` is the sign of ``f`` or, at a root, of ``f'``.
    """
    if lo == hi:
        return lo, hi
    s_lo = sign_at(f, lo) or sign_at(derivative(f), lo)
    while evaluate(f, lo) == 0 or evaluate(f, hi) == 0:
        m = (lo + hi) / 2
        sm = sign_at(f, m)
        if sm == 0:
            return m, m
        if sm == s_lo:
            lo = m
        else:
            hi = m
    return lo, hi


def refine(f: Sequence, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Halve an isolating interval whose endpoints are not roots."""
    m = (lo + hi) / 2
    sm = sign_at(f, m)
    if sm == 0:
        return m, m
    if sm == sign_at(f, lo):
        return m, hi
    return lo, m


def _newton_narrow(f: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink an isolating interval below ``width`` using bracketed Newton steps.

    Iterates are rounded to dyadics with doubling precision; every step keeps
    a valid bracket, so a poor Newton step only costs a bisection.
    """
    df = derivative(f)
    s_lo = sign_at(f, lo)
    need = width.denominator.bit_length() - width.numerator.bit_length() + 8
    bits = 16
    x = (lo + hi) / 2
    for _ in range(200):
        if hi - lo < width:
            break
        n, d = x.numerator, x.denominator
        fx = homogeneous_value(f, n, d)
        dfx = homogeneous_value(df, n, d) if df else 0
        xn = x - Fraction(fx, dfx * d) if dfx else (lo + hi) / 2
        scale = 1 << bits
        xn = Fraction(round(xn * scale), scale)
        if not lo < xn < hi:
            xn = (lo + hi) / 2
        s = sign_at(f, xn)
        if s == 0:
            return xn, xn
        if s == s_lo:
            lo = xn
        else:
            hi = xn
        x = xn
        if hi - lo < width:
            break
        # the iterate is now an endpoint; probe just past it to close the bracket
        eps = width / 4
        probe = x + eps if x == lo else x - eps
        if lo < probe < hi:
            sp = sign_at(f, probe)
            if sp == 0:
                return probe, probe
            if sp == s_lo:
                lo = probe
            else:
                hi = probe
        bits = min(2 * bits, need)
    while hi - lo >= width:
        lo, hi = refine(f, lo, hi)
    return lo, hi


def rational_root_in(f: List[int], lo: Fraction, hi: Fraction) -> Tuple[Optional[Fraction], Fraction, Fraction]:
    """Detect a rational root of integer ``f`` inside an isolating interval.

    A rational root ``k/m`` in lowest terms has ``m`` dividing the leading
    coefficient ``lc``, so once the interval is narrower than ``1/lc`` at
    most one candidate ``k/lc`` lies inside.  Returns ``(root_or_None, lo, hi)``.
    """
    lc = abs(f[-1])
    width = Fraction(1, lc)
    for _ in range(12):
        if hi - lo < width:
            break
        lo, hi = refine(f, lo, hi)
        if lo == hi:
            return lo, lo, hi
    if hi - lo >= width:
        lo, hi = _newton_narrow(f, lo, hi, width)
        if lo == hi:
            return lo, lo, hi
    k = (lo * lc).__floor__() + 1
    cand = Fraction(k, lc)
    if lo < cand < hi and sign_at(f, cand) == 0:
        return cand, lo, hi
    return None, lo, hi
