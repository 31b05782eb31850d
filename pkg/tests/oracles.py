"""Independent oracles shared by the tests.

None of these reuse the code paths they check: determinants are expanded
directly, real roots are located by bisection with derivative bounds, and
lemmas are judged by exact substitution.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from dnlsat.algebra import Polynomial
from dnlsat.explain import explain_conflict
from dnlsat.formula import Assignment, ClauseDB, evaluate_clause, evaluate_literal, literal_feasible_set
from dnlsat.realroots import IntervalSet, RealAlgebraic

# ----------------------------------------------------------------------
# Sylvester determinant
# ----------------------------------------------------------------------
def sylvester_matrix(p: Polynomial, q: Polynomial, v: int) -> List[List[Polynomial]]:
    f = p.coefficients_in(v)
    g = q.coefficients_in(v)
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    zero = Polynomial()
    rows = []
    for i in range(m):
        rows.append([zero] * i + list(f) + [zero] * (size - i - n - 1))
    for i in range(n):
        rows.append([zero] * i + list(g) + [zero] * (size - i - m - 1))
    return rows


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along rows, memoized on the set of used columns."""
    size = len(M)

    @lru_cache(maxsize=None)
    def minor(row: int, used: int) -> Polynomial:
        if row == size:
            return Polynomial.const(1)
        total = Polynomial()
        for col in range(size):
            if used >> col & 1 or M[row][col].is_zero():
                continue
            # sign of the column among the still free columns
            sign = -1 if bin(used >> (col + 1)).count("1") % 2 else 1
            term = M[row][col] * minor(row + 1, used | (1 << col))
            total = total + term if sign > 0 else total - term
        return total

    return minor(0, 0)


def sylvester_resultant(p: Polynomial, q: Polynomial, v: int) -> Polynomial:
    return determinant(sylvester_matrix(p, q, v))


def random_poly(rng: random.Random, nvars: int, main: int, max_deg: int, coef: int = 9,
                terms: Tuple[int, int] = (1, 4)) -> Polynomial:
    """Random sparse polynomial; ``main`` is the variable of interest."""
    out = {}
    for _ in range(rng.randint(*terms)):
        mono = {}
        if rng.random() < 0.85:
            mono[main] = rng.randint(0, max_deg)
        for v in range(nvars):
            if v != main and rng.random() < 0.5:
                mono[v] = rng.randint(1, 2)
        key = tuple(sorted(((a, b) for a, b in mono.items() if b), reverse=True))
        out[key] = rng.randint(-coef, coef)
    return Polynomial(out)


# ----------------------------------------------------------------------
# real roots by bisection
# ----------------------------------------------------------------------
def _eval(f: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _deriv(f: Sequence[Fraction]) -> List[Fraction]:
    return [i * f[i] for i in range(1, len(f))]


def _abs_bound(f: Sequence[Fraction], r: Fraction) -> Fraction:
    """Upper bound for |f| on [-r, r]."""
    return sum((abs(c) * r ** i for i, c in enumerate(f)), Fraction(0))


def _trim(f):
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _rem(f, g):
    f = list(f)
    while len(f) >= len(g) and f:
        k = len(f) - len(g)
        c = f[-1] / g[-1]
        for i, gc in enumerate(g):
            f[i + k] -= c * gc
        f = _trim(f)
    return f


def square_free(f: Sequence) -> List[Fraction]:
    """f / gcd(f, f') with schoolbook Euclid over the rationals."""
    f = _trim(f)
    a, b = f, _trim(_deriv(f))
    while b:
        a, b = b, _rem(a, b)
    g = a
    if len(g) <= 1:
        return f
    # exact long division f / g
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    r = list(f)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(g) - 1] / g[-1]
        q[k] = c
        for i, gc in enumerate(g):
            r[i + k] -= c * gc
    return _trim(q)


def cauchy_bound(f: Sequence) -> Fraction:
    f = _trim(f)
    return 1 + max(abs(c / f[-1]) for c in f[:-1]) if len(f) > 1 else Fraction(1)


def bisection_roots(f: Sequence, tol: Fraction = Fraction(1, 10 ** 6)) -> List[Tuple[Fraction, Fraction]]:
    """Intervals ``[a, b]`` each holding exactly one real root of square-free ``f``.

    A cell is discarded when |f(mid)| exceeds a bound on how far ``f`` can
    move inside it, accepted when ``f'`` provably keeps its sign there
    (so ``f`` is monotone) and a sign change is seen, and bisected otherwise.
    """
    f = _trim(f)
    if len(f) <= 1:
        return []
    df = _deriv(f)
    ddf = _deriv(df)
    B = cauchy_bound(f)
    out: List[Tuple[Fraction, Fraction]] = []

    def cell(a: Fraction, b: Fraction, depth: int) -> None:
        if depth > 200:
            raise RuntimeError("bisection oracle did not converge")
        m = (a + b) / 2
        h = (b - a) / 2
        r = max(abs(a), abs(b))
        if abs(_eval(f, m)) > _abs_bound(df, r) * h:
            return
        if abs(_eval(df, m)) > _abs_bound(ddf, r) * h:
            fa, fb = _eval(f, a), _eval(f, b)
            if fa == 0:
                out.append((a, a))
            elif fb == 0:
                pass  # reported by the neighbouring cell starting at b
            elif (fa < 0) != (fb < 0):
                lo, hi = a, b
                while hi - lo > tol:
                    mid = (lo + hi) / 2
                    fm = _eval(f, mid)
                    if fm == 0:
                        lo = hi = mid
                        break
                    if (fm < 0) == (fa < 0):
                        lo = mid
                    else:
                        hi = mid
                out.append((lo, hi))
            return
        cell(a, m, depth + 1)
        cell(m, b, depth + 1)

    cell(-B, B, 0)
    if _eval(f, B) == 0:
        out.append((B, B))
    return sorted(out)


# ----------------------------------------------------------------------
# explanation fuzzing
# ----------------------------------------------------------------------
RELS = ["<", ">", "=", "<=", ">=", "!="]


def _fuzz_poly(rng: random.Random, vs: Sequence[int], main: int) -> Polynomial:
    p = Polynomial()
    for _ in range(rng.randint(1, 4)):
        m = Polynomial.const(rng.randint(-5, 5))
        for v in vs:
            if rng.random() < 0.7:
                m = m * Polynomial.var(v, rng.randint(0, 2 if v != main else 4))
        p = p + m
    return p


def fuzz_conflict(rng: random.Random, db: ClauseDB):
    """A random infeasible core for variable 0 under a random sample of 1 and 2.

    Returns ``(core, order, sample)`` or None when the drawn literals stay
    jointly feasible.
    """
    x = 0
    order = [1, 2][: rng.randint(0, 2)]
    rng.shuffle(order)
    sample = {v: RealAlgebraic(Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))) for v in order}
    if order and rng.random() < 0.3:
        sample[order[0]] = RealAlgebraic.roots([-2, 0, 1])[rng.randint(0, 1)]
    core: List[int] = []
    S = IntervalSet.full()
    for _ in range(8):
        p = _fuzz_poly(rng, [x] + order, x)
        if x not in p.vars or p.degree_in(x) > 4 or p.total_degree() > 4:
            continue
        l = db.mk_poly_lit(p, rng.choice(RELS))
        if isinstance(l, bool) or any((c >> 1) == (l >> 1) for c in core):
            continue
        fs = literal_feasible_set(db, l, x, sample)
        if fs.is_empty() or fs.is_full():
            continue
        core.append(l)
        S = S & fs
        if S.is_empty():
            return core, order, sample
    return None


def check_lemma(rng: random.Random, db: ClauseDB, lemma, sample, points: int = 100) -> Optional[str]:
    """None if the lemma is false at its trail and true at ``points`` random points."""
    bools = {l >> 1: not (l & 1) for l in lemma.core}
    trail = Assignment(sample, bools)
    for l in lemma.lits:
        if evaluate_literal(db, l, trail) is not False:
            return f"literal {db.lit_to_str(l)} is not false at the generating trail"
    for _ in range(points):
        pt = {v: Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3, 5])) for v in range(db.num_arith)}
        if evaluate_clause(db, lemma.lits, Assignment(pt)) is not True:
            return f"lemma fails at {pt}"
    return None


def explain_fuzz(seed: int, count: int, points: int = 100):
    """Generate ``count`` conflicts and check every lemma; returns (checked, failures)."""
    rng = random.Random(seed)
    db = ClauseDB()
    for name in "xyz":
        db.new_arith_var(name)
    failures = []
    done = 0
    while done < count:
        got = fuzz_conflict(rng, db)
        if got is None:
            continue
        core, order, sample = got
        lemma = explain_conflict(db, core, 0, order, sample)
        problem = check_lemma(rng, db, lemma, sample, points)
        if problem:
            failures.append(problem)
        done += 1
    return done, failures


# ----------------------------------------------------------------------
# model checking by substitution into the parsed script
# ----------------------------------------------------------------------
def script_holds(script, model) -> bool:
    """Evaluate every assertion of ``script`` at ``model`` (name -> value).

    Real subterms are expanded to polynomials over the declared reals and
    each relation is decided by the exact sign at the model point; nothing
    from the CNF or the solver state is consulted.
    """
    from dnlsat.realroots import sign_at_point
    from dnlsat.smtlib import App, Assert, DeclareFun, DefineFun, Let, Num, Sym

    index = {}
    point = {}
    macros = {}

    def ev(t, env):
        if isinstance(t, Num):
            return Polynomial.const(t.value)
        if isinstance(t, Sym):
            if t.name in ("true", "false"):
                return t.name == "true"
            if t.name in env:
                return env[t.name]
            if t.name in macros:
                return macros[t.name]
            if t.name in index:
                return Polynomial.var(index[t.name])
            return bool(model[t.name])
        if isinstance(t, Let):
            inner = dict(env)
            for n, sub in t.bindings:
                inner[n] = ev(sub, env)
            return ev(t.body, inner)
        vs = [ev(a, env) for a in t.args]
        op = t.op
        if op in "+-*/":
            if op == "-" and len(vs) == 1:
                return -vs[0]
            acc = vs[0]
            for v in vs[1:]:
                if op == "+":
                    acc = acc + v
                elif op == "-":
                    acc = acc - v
                elif op == "*":
                    acc = acc * v
                else:
                    acc = acc * (Fraction(1) / Fraction(v.constant_value()))
            return acc
        if op in ("<", "<=", ">", ">=") or (op in ("=", "distinct") and isinstance(vs[0], Polynomial)):
            def sgn(p):
                return sign_at_point(p, point) if not p.is_constant() else \
                    (p.constant_value() > 0) - (p.constant_value() < 0)
            test = {"<": lambda s: s < 0, "<=": lambda s: s <= 0, ">": lambda s: s > 0,
                    ">=": lambda s: s >= 0, "=": lambda s: s == 0}
            if op == "distinct":
                return all(sgn(vs[i] - vs[j]) != 0 for i in range(len(vs)) for j in range(i + 1, len(vs)))
            return all(test[op](sgn(a - b)) for a, b in zip(vs, vs[1:]))
        if op == "not":
            return not vs[0]
        if op == "and":
            return all(vs)
        if op == "or":
            return any(vs)
        if op == "=>":
            acc = vs[-1]
            for v in reversed(vs[:-1]):
                acc = (not v) or acc
            return acc
        if op == "xor":
            acc = vs[0]
            for v in vs[1:]:
                acc = acc != v
            return acc
        if op == "=":
            return all(a == b for a, b in zip(vs, vs[1:]))
        if op == "distinct":
            return len(set(vs)) == len(vs)
        if op == "ite":
            return vs[1] if vs[0] else vs[2]
        raise ValueError(f"unexpected operator {op}")

    for c in script.commands:
        if isinstance(c, DeclareFun) and c.sort == "Real":
            index[c.name] = len(index)
            val = model[c.name]
            point[index[c.name]] = val if isinstance(val, RealAlgebraic) else RealAlgebraic(Fraction(val))
    for c in script.commands:
        if isinstance(c, DefineFun):
            macros[c.name] = ev(c.body, {})
        elif isinstance(c, Assert) and ev(c.term, {}) is not True:
            return False
    return True
