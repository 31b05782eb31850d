"""Exact sparse multivariate polynomials over the rationals.

Variables are dense integer ids.  A monomial is a tuple of ``(var, exp)``
pairs sorted by *descending* variable id with positive exponents; the empty
tuple is the constant monomial.  Terms are ordered graded-lexicographically
with higher variable ids more significant, so ``(total_degree, monomial)``
is a valid sort key.

Besides ring arithmetic the module provides the ingredients of CAD
projection: coefficients in a variable, subresultant chains, resultants,
discriminants, gcds and square-free parts.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd as igcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
Number = Union[int, Fraction]

ONE_MONO: Monomial = ()


class DegenerateError(ValueError):
    """An operand has too small a degree for the requested operation."""


def _num(c: Number) -> Number:
    """Store integral rationals as ``int`` (much faster arithmetic)."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@functools.lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va > vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Return ``a / b`` or None when ``b`` does not divide ``a``."""
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items(), reverse=True))


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), m)


def mono_degree(m: Monomial, v: int) -> int:
    for var, e in m:
        if var == v:
            return e
    return 0


def _mono_without(m: Monomial, v: int) -> Monomial:
    return tuple(t for t in m if t[0] != v)


class Polynomial:
    """Immutable polynomial with rational coefficients in canonical form."""

    __slots__ = ("_terms", "_hash", "_vars")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None):
        clean: Dict[Monomial, Number] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _num(c)
        self._terms = clean
        self._hash = None
        self._vars = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Number]) -> "Polynomial":
        # terms already clean: no zero coefficients, ints where integral
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        p._vars = None
        return p

    @classmethod
    def const(cls, c: Number) -> "Polynomial":
        return cls._raw({ONE_MONO: _num(c)} if c else {})

    @classmethod
    def var(cls, v: int, exp: int = 1) -> "Polynomial":
        if exp == 0:
            return cls.const(1)
        return cls._raw({((v, exp),): 1})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence["Polynomial"], v: int) -> "Polynomial":
        """Inverse of :meth:`coefficients_in`: ``coeffs`` highest degree first."""
        d = len(coeffs) - 1
        out: Dict[Monomial, Number] = {}
        for i, c in enumerate(coeffs):
            k = d - i
            for m, a in c._terms.items():
                mm = _mono_mul(m, ((v, k),)) if k else m
                out[mm] = a
        return cls._raw(out)

    # -- basic queries -------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> Number:
        """Value of a constant polynomial (raises if not constant)."""
        if not self._terms:
            return 0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms[ONE_MONO]

    @property
    def vars(self) -> frozenset:
        if self._vars is None:
            self._vars = frozenset(v for m in self._terms for v, _ in m)
        return self._vars

    def max_var(self) -> int:
        """Largest variable id present, or -1 for constants."""
        best = -1
        for m in self._terms:
            if m and m[0][0] > best:
                best = m[0][0]
        return best

    def degree_in(self, v: int) -> int:
        return max((mono_degree(m, v) for m in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def leading_term(self) -> Tuple[Monomial, Number]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=_mono_key)
        return m, self._terms[m]

    def leading_coefficient(self) -> Number:
        return self.leading_term()[1]

    def coefficients_in(self, v: int) -> List["Polynomial"]:
        """Coefficients of ``self`` viewed univariate in ``v``, highest first."""
        if not self._terms:
            return []
        buckets: Dict[int, Dict[Monomial, Number]] = {}
        for m, c in self._terms.items():
            k = mono_degree(m, v)
            buckets.setdefault(k, {})[_mono_without(m, v) if k else m] = c
        d = max(buckets)
        return [Polynomial._raw(buckets.get(k, {})) for k in range(d, -1, -1)]

    def leading_coeff_in(self, v: int) -> "Polynomial":
        return self.coefficients_in(v)[0] if self._terms else Polynomial()

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _num(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial._raw({m: _num(c * other) for m, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Polynomial()
        out: Dict[Monomial, Number] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw({m: _num(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Number) -> "Polynomial":
        return self * c

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- calculus / substitution --------------------------------------
    def derivative(self, v: int) -> "Polynomial":
        out: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            k = mono_degree(m, v)
            if k:
                mm = tuple((var, e - 1) if var == v else (var, e) for var, e in m if not (var == v and e == 1))
                out[mm] = out.get(mm, 0) + c * k
        return Polynomial._raw({m: _num(c) for m, c in out.items() if c})

    def subs(self, values: Mapping[int, Number]) -> "Polynomial":
        """Substitute rational values for some variables."""
        if not values or not (self.vars & values.keys()):
            return self
        out: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            keep = []
            for v, e in m:
                if v in values:
                    c = c * values[v] ** e
                    if not c:
                        break
                else:
                    keep.append((v, e))
            if c:
                mm = tuple(keep)
                out[mm] = out.get(mm, 0) + c
        return Polynomial._raw({m: _num(c) for m, c in out.items() if c})

    def evaluate(self, values: Mapping[int, Number]) -> Number:
        """Exact value at a full rational point."""
        total: Number = 0
        for m, c in self._terms.items():
            for v, e in m:
                c = c * values[v] ** e
            total += c
        return _num(total)

    # -- normal forms --------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self._terms:
            return Fraction(0)
        g = 0
        l = 1
        for c in self._terms.values():
            if isinstance(c, int):
                g = igcd(g, c)
            else:
                g = igcd(g, c.numerator)
                l = l * c.denominator // igcd(l, c.denominator)
        return Fraction(g, l)

    def canonical(self) -> Tuple["Polynomial", int]:
        """Scale to integer content 1 and positive leading coefficient.

        Returns ``(q, s)`` with ``q = self * k`` for some rational ``k`` whose
        sign is ``s``.
        """
        if not self._terms:
            return self, 1
        k = 1 / self.content()
        s = 1
        if self.leading_coefficient() < 0:
            k, s = -k, -1
        if k == 1:
            return self, 1
        return self * k, s

    def primitive(self) -> "Polynomial":
        return self.canonical()[0]

    def monic(self) -> "Polynomial":
        return self * (Fraction(1) / self.leading_coefficient())

    # -- division ------------------------------------------------------
    def divmod(self, q: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        """Multivariate division by a single divisor under the term order."""
        if not q._terms:
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = q.leading_term()
        rem = dict(self._terms)
        quot: Dict[Monomial, Number] = {}
        out_rem: Dict[Monomial, Number] = {}
        qterms = list(q._terms.items())
        while rem:
            m = max(rem, key=_mono_key)
            c = rem[m]
            t = _mono_div(m, lm)
            if t is None:
                out_rem[m] = c
                del rem[m]
                continue
            if isinstance(c, int) and isinstance(lc, int) and c % lc == 0:
                f = c // lc
            else:
                f = _num(Fraction(c) / lc)
            quot[t] = f
            for mq, cq in qterms:
                mm = _mono_mul(t, mq)
                s = rem.get(mm, 0) - f * cq
                if s:
                    rem[mm] = _num(s)
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(quot), Polynomial._raw(out_rem)

    def exact_div(self, q: "Polynomial") -> "Polynomial":
        if q.is_constant():
            c = q.constant_value()
            if not c:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (Fraction(1) / c)
        quot, rem = self.divmod(q)
        if rem._terms:
            raise ArithmeticError("inexact polynomial division")
        return quot

    # -- display -------------------------------------------------------
    def to_str(self, names: Optional[Mapping[int, str]] = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=_mono_key, reverse=True):
            c = self._terms[m]
            factors = []
            for v, e in m:
                name = names[v] if names else f"x{v}"
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()})"


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return NotImplemented


ZERO = Polynomial()
ONE = Polynomial.const(1)


# ----------------------------------------------------------------------
# functional surface
# ----------------------------------------------------------------------
def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def derivative(p: Polynomial, v: int) -> Polynomial:
    return p.derivative(v)


def degree_in(p: Polynomial, v: int) -> int:
    return p.degree_in(v)


def coefficients_in(p: Polynomial, v: int) -> List[Polynomial]:
    return p.coefficients_in(v)


# ----------------------------------------------------------------------
# recursive (univariate over a polynomial ring) helpers
# coefficient lists are highest degree first, no leading zeros
# ----------------------------------------------------------------------
def _strip(f: List[Polynomial]) -> List[Polynomial]:
    i = 0
    while i < len(f) and f[i].is_zero():
        i += 1
    return f[i:]


def _prem(f: List[Polynomial], g: List[Polynomial]) -> List[Polynomial]:
    """Pseudo-remainder ``lc(g)^(deg f - deg g + 1) * f mod g``."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return f
    lc = g[0]
    n = df - dg + 1
    r = list(f)
    while r and len(r) - 1 >= dg:
        c = r[0]
        new = [lc * ri for ri in r]
        for i, gi in enumerate(g):
            new[i] = new[i] - c * gi
        r = _strip(new[1:])
        n -= 1
    if n and r:
        k = lc ** n
        r = [k * ri for ri in r]
    return r


def _div_list(f: List[Polynomial], b: Polynomial) -> List[Polynomial]:
    return [c.exact_div(b) for c in f]


def subresultant_prs(f: List[Polynomial], g: List[Polynomial]):
    """Subresultant PRS of coefficient lists with ``deg f >= deg g >= 0``.

    Returns ``(R, S)``: the remainder sequence starting with ``f, g`` and the
    principal subresultant coefficient attached to the degree of each entry.
    """
    n, m = len(f) - 1, len(g) - 1
    R = [f, g]
    if m < 0:
        return [f], [ONE]
    d = n - m
    b = ONE if (d + 1) % 2 == 0 else -ONE
    h = [b * c for c in _prem(f, g)]
    lc = g[0]
    c = lc ** d
    S = [ONE, c]
    c = -c
    while h:
        k = len(h) - 1
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = _div_list(_prem(f, g), b)
        lc = g[0]
        if d > 1:
            c = ((-lc) ** d).exact_div(c ** (d - 1))
        else:
            c = -lc
        S.append(-c)
    return R, S


def _as_list(p: Polynomial, v: int) -> List[Polynomial]:
    return p.coefficients_in(v)


def _resultant_lists(F: List[Polynomial], G: List[Polynomial]) -> Polynomial:
    n, m = len(F) - 1, len(G) - 1
    if n < 0 or m < 0:
        return ZERO
    if m == 0:
        return G[0] ** n
    if n == 0:
        return F[0] ** m
    sign = 1
    if n < m:
        F, G = G, F
        if (n * m) % 2:
            sign = -1
    R, S = subresultant_prs(F, G)
    if len(R[-1]) - 1 > 0:
        return ZERO
    res = S[-1]
    return -res if sign < 0 else res


def resultant(p: Polynomial, q: Polynomial, v: int) -> Polynomial:
    """Resultant of ``p`` and ``q`` in ``v`` (Sylvester determinant convention)."""
    if p.degree_in(v) < 1 or q.degree_in(v) < 1:
        raise DegenerateError("resultant needs positive degree in the variable")
    return _resultant_lists(_as_list(p, v), _as_list(q, v))


def resultant_general(p: Polynomial, q: Polynomial, v: int) -> Polynomial:
    """Resultant allowing degree-0 operands (``Res(p, c) = c^deg p``)."""
    return _resultant_lists(_as_list(p, v), _as_list(q, v))


def psc_chain(p: Polynomial, q: Polynomial, v: int) -> List[Polynomial]:
    """Principal subresultant coefficients ``[psc_0, psc_1, ..., psc_{m-1}]``.

    ``m = min(deg p, deg q)``; ``psc_0`` is the resultant.  Entries for
    defective indices are zero.
    """
    F, G = _as_list(p, v), _as_list(q, v)
    n, m = len(F) - 1, len(G) - 1
    swapped = n < m
    if swapped:
        F, G = G, F
        n, m = m, n
    if m < 1:
        return []
    R, S = subresultant_prs(F, G)
    out = [ZERO] * m
    for Ri, Si in zip(R[1:], S[1:]):
        k = len(Ri) - 1
        if k < m:
            out[k] = -Si if swapped and ((n - k) * (m - k)) % 2 else Si
    return out


def discriminant(p: Polynomial, v: int) -> Polynomial:
    """``(-1)^(d(d-1)/2) * Res(p, dp/dv) / lc(p)`` in ``v``."""
    d = p.degree_in(v)
    if d < 2:
        raise DegenerateError("discriminant needs degree >= 2")
    r = resultant(p, p.derivative(v), v)
    r = r.exact_div(p.leading_coeff_in(v))
    return -r if (d * (d - 1) // 2) % 2 else r


# ----------------------------------------------------------------------
# gcd and square-free part
# ----------------------------------------------------------------------
def _content_in(p: Polynomial, v: int) -> Polynomial:
    g = ZERO
    for c in p.coefficients_in(v):
        g = gcd(g, c)
        if g.is_constant():
            return ONE
    return g


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, canonically scaled (constants give 1)."""
    if p.is_zero():
        return q.primitive() if not q.is_constant() else (ONE if q else ZERO)
    if q.is_zero():
        return p.primitive() if not p.is_constant() else ONE
    if p.is_constant() or q.is_constant():
        return ONE
    v = max(p.max_var(), q.max_var())
    if p.degree_in(v) == 0:
        return gcd(p, _content_in(q, v))
    if q.degree_in(v) == 0:
        return gcd(_content_in(p, v), q)
    cp, cq = _content_in(p, v), _content_in(q, v)
    pp, qp = p.exact_div(cp), q.exact_div(cq)
    c = gcd(cp, cq)
    F, G = _as_list(pp, v), _as_list(qp, v)
    if len(F) < len(G):
        F, G = G, F
    R, _ = subresultant_prs(F, G)
    last = Polynomial.from_coefficients(R[-1], v)
    if last.degree_in(v) == 0:
        h = ONE
    else:
        h = last.exact_div(_content_in(last, v))
    return (c * h).primitive()


def square_free_part(p: Polynomial, v: int) -> Polynomial:
    """``p / gcd(p, dp/dv)``, canonically scaled."""
    if p.degree_in(v) < 1:
        raise DegenerateError("square-free part needs positive degree")
    g = gcd(p, p.derivative(v))
    return p.exact_div(g).primitive()
