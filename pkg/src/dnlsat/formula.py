"""Atoms, literals, clauses and the clause database.

Internally every arithmetic atom uses one of the strict relations ``<``,
``=`` or ``>``; the remaining relations are negated literals (``p <= 0`` is
``not (p > 0)``).  A literal is the integer ``2 * bvar + neg`` where every
atom owns a boolean variable and pure propositional variables own one too.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import Polynomial, coefficients_in, psc_chain
from .realroots import (
    IntervalSet,
    Interval,
    RealAlgebraic,
    ZeroPolynomialError,
    compare,
    isolate_roots,
    rational_between,
    rational_to_smtlib,
    sign_at_point,
)

LT, EQ, GT = "<", "=", ">"
RELATIONS = (LT, EQ, GT)
_FLIP = {LT: GT, EQ: EQ, GT: LT}


def lit(bvar: int, neg: bool = False) -> int:
    return 2 * bvar + int(neg)


def lit_var(l: int) -> int:
    return l >> 1


def lit_neg(l: int) -> bool:
    return bool(l & 1)


def negate(l: int) -> int:
    return l ^ 1


def _holds(sign: int, rel: str) -> bool:
    if rel == LT:
        return sign < 0
    if rel == GT:
        return sign > 0
    return sign == 0


class Atom:
    """A hash-consed arithmetic constraint.

    ``kind == "poly"``: ``p rel 0``.  ``kind == "root"``: ``v rel r`` where
    ``r`` is the ``k``-th real root of ``p`` in ``v`` (false when missing).
    """

    __slots__ = ("kind", "rel", "p", "v", "k", "bvar", "vars", "_key")

    def __init__(self, kind: str, rel: str, p: Polynomial, v: int = -1, k: int = 0):
        self.kind = kind
        self.rel = rel
        self.p = p
        self.v = v
        self.k = k
        self.bvar = -1
        vs = set(p.vars)
        if kind == "root":
            vs.add(v)
        self.vars = frozenset(vs)
        self._key = (kind, rel, p, v, k)

    @property
    def key(self):
        return self._key

    @property
    def is_root(self) -> bool:
        return self.kind == "root"

    def to_str(self, names=None) -> str:
        if self.kind == "poly":
            return f"{self.p.to_str(names)} {self.rel} 0"
        name = names[self.v] if names else f"x{self.v}"
        return f"{name} {self.rel} root[{self.k}]({self.p.to_str(names)})"

    def __repr__(self) -> str:
        return f"Atom({self.to_str()})"


class Clause:
    __slots__ = ("lits", "learnt", "activity", "removed")

    def __init__(self, lits: Sequence[int], learnt: bool = False):
        self.lits: List[int] = list(lits)
        self.learnt = learnt
        self.activity = 0.0
        self.removed = False

    def __len__(self) -> int:
        return len(self.lits)

    def __iter__(self):
        return iter(self.lits)

    def __repr__(self) -> str:
        tag = "L" if self.learnt else "C"
        return f"{tag}{self.lits}"


def normalize_lits(lits: Iterable[int]) -> Optional[List[int]]:
    """Drop duplicates (keeping first occurrence); None for tautologies."""
    seen = set()
    out = []
    for l in lits:
        if l in seen:
            continue
        if l ^ 1 in seen:
            return None
        seen.add(l)
        out.append(l)
    return out


class ClauseDB:
    """Variable tables, the atom table and the original/learnt clause lists."""

    RESCALE_LIMIT = 1e100

    def __init__(self, clause_decay: float = 0.999, clause_bump: float = 1.0):
        self.arith_names: List[str] = []
        self.bool_names: List[Optional[str]] = []
        self.atoms: List[Optional[Atom]] = []
        self._atom_table: Dict[tuple, Atom] = {}
        self.original: List[Clause] = []
        self.learnt: List[Clause] = []
        self.trivially_false = False
        self.clause_decay = clause_decay
        self.cla_inc = float(clause_bump)

    # -- variables -----------------------------------------------------
    @property
    def num_arith(self) -> int:
        return len(self.arith_names)

    @property
    def num_bvars(self) -> int:
        return len(self.atoms)

    def new_arith_var(self, name: Optional[str] = None) -> int:
        v = len(self.arith_names)
        self.arith_names.append(name if name is not None else f"x{v}")
        return v

    def new_bool_var(self, name: Optional[str] = None) -> int:
        b = len(self.atoms)
        self.atoms.append(None)
        self.bool_names.append(name)
        return b

    def is_pure_bool(self, bvar: int) -> bool:
        return self.atoms[bvar] is None

    def atom_of(self, l: int) -> Optional[Atom]:
        return self.atoms[l >> 1]

    # -- atoms ---------------------------------------------------------
    def _intern(self, atom: Atom) -> Atom:
        found = self._atom_table.get(atom.key)
        if found is not None:
            return found
        atom.bvar = len(self.atoms)
        self.atoms.append(atom)
        self.bool_names.append(None)
        self._atom_table[atom.key] = atom
        return atom

    def mk_poly_lit(self, p: Polynomial, rel: str) -> Union[int, bool]:
        """Literal for ``p rel 0`` with rel in <, <=, =, !=, >=, >.

        Constant constraints fold to ``True``/``False``.
        """
        if rel == "distinct":
            rel = "!="
        if p.is_constant():
            s = (p.constant_value() > 0) - (p.constant_value() < 0)
            return {"<": s < 0, "<=": s <= 0, "=": s == 0, "!=": s != 0, ">=": s >= 0, ">": s > 0}[rel]
        q, sign = p.canonical()
        base, neg = {"<": (LT, False), "<=": (GT, True), "=": (EQ, False),
                     "!=": (EQ, True), ">=": (LT, True), ">": (GT, False)}[rel]
        if sign < 0:
            base = _FLIP[base]
        atom = self._intern(Atom("poly", base, q))
        return lit(atom.bvar, neg)

    def mk_root_lit(self, v: int, k: int, p: Polynomial, rel: str) -> int:
        if p.degree_in(v) < 1:
            raise ValueError("root atom polynomial must mention its variable")
        if k < 1:
            raise ValueError("root index is 1-based")
        q, _ = p.canonical()
        base, neg = {"<": (LT, False), "<=": (GT, True), "=": (EQ, False),
                     "!=": (EQ, True), ">=": (LT, True), ">": (GT, False)}[rel]
        atom = self._intern(Atom("root", base, q, v, k))
        return lit(atom.bvar, neg)

    def find_atom(self, atom: Atom) -> Optional[Atom]:
        return self._atom_table.get(atom.key)

    # -- clauses -------------------------------------------------------
    def add_clause(self, lits: Iterable[int], learnt: bool = False) -> Optional[Clause]:
        norm = normalize_lits(lits)
        if norm is None:
            return None
        if not norm and not learnt:
            self.trivially_false = True
        c = Clause(norm, learnt)
        (self.learnt if learnt else self.original).append(c)
        return c

    def bump_clause(self, c: Clause) -> None:
        c.activity += self.cla_inc
        if c.activity > self.RESCALE_LIMIT:
            for d in self.learnt:
                d.activity *= 1e-100
            self.cla_inc *= 1e-100

    def decay_clause_inc(self) -> None:
        self.cla_inc /= self.clause_decay

    def lit_to_str(self, l: int) -> str:
        atom = self.atoms[l >> 1]
        body = atom.to_str(self.arith_names) if atom else (self.bool_names[l >> 1] or f"b{l >> 1}")
        return f"!({body})" if l & 1 else body


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------
class Assignment:
    """A partial assignment: arithmetic values and boolean values by bvar."""

    def __init__(self, arith: Optional[Mapping[int, RealAlgebraic]] = None,
                 bools: Optional[Mapping[int, bool]] = None):
        self.arith: Dict[int, RealAlgebraic] = {
            v: (x if isinstance(x, RealAlgebraic) else RealAlgebraic(Fraction(x)))
            for v, x in (arith or {}).items()
        }
        self.bools: Dict[int, bool] = dict(bools or {})


def _root_value(atom: Atom, arith: Mapping[int, RealAlgebraic]) -> Optional[RealAlgebraic]:
    """The ``k``-th root of a root atom's polynomial, or None when missing."""
    try:
        roots = isolate_roots(atom.p, atom.v, arith)
    except ZeroPolynomialError:
        return None
    if len(roots) < atom.k:
        return None
    return roots[atom.k - 1]


def evaluate_atom(atom: Atom, arith: Mapping[int, RealAlgebraic]) -> Optional[bool]:
    """Truth of ``atom`` under ``arith``; None when a variable is unassigned."""
    for v in atom.vars:
        if v not in arith:
            return None
    if atom.kind == "poly":
        return _holds(sign_at_point(atom.p, arith), atom.rel)
    r = _root_value(atom, arith)
    if r is None:
        return False
    return _holds(compare(arith[atom.v], r), atom.rel)


def evaluate_literal(db: ClauseDB, l: int, asg: Assignment) -> Optional[bool]:
    b = l >> 1
    val = asg.bools.get(b)
    if val is None:
        atom = db.atoms[b]
        if atom is None:
            return None
        val = evaluate_atom(atom, asg.arith)
        if val is None:
            return None
    return val != bool(l & 1)


def evaluate_clause(db: ClauseDB, c: Iterable[int], asg: Assignment) -> Optional[bool]:
    undef = False
    for l in c:
        v = evaluate_literal(db, l, asg)
        if v:
            return True
        if v is None:
            undef = True
    return None if undef else False


def max_unassigned_info(db: ClauseDB, c: Iterable[int], asg: Assignment) -> Tuple[str, object]:
    """Classify a clause for the search engine.

    Returns one of ``("true", None)``, ``("false", None)``,
    ``("unit_bool", lit)``, ``("univariate", var)`` or ``("multi", None)``.
    """
    undef_bools = []
    free_vars = set()
    n_undef = 0
    for l in c:
        v = evaluate_literal(db, l, asg)
        if v:
            return "true", None
        if v is False:
            continue
        n_undef += 1
        atom = db.atoms[l >> 1]
        if atom is None:
            undef_bools.append(l)
        else:
            free_vars.update(x for x in atom.vars if x not in asg.arith)
    if n_undef == 0:
        return "false", None
    if not undef_bools and len(free_vars) == 1:
        return "univariate", next(iter(free_vars))
    if n_undef == 1 and undef_bools:
        return "unit_bool", undef_bools[0]
    return "multi", None


# ----------------------------------------------------------------------
# feasible sets
# ----------------------------------------------------------------------
def _gap_samples(roots: Sequence[RealAlgebraic]) -> List[Fraction]:
    """One rational in each open gap determined by sorted distinct roots."""
    if not roots:
        return [Fraction(0)]
    out = [Fraction(roots[0].floor() - 1)]
    for a, b in zip(roots, roots[1:]):
        out.append(rational_between(a, b))
    out.append(Fraction(roots[-1].floor() + 1))
    return out


def _set_from_cells(roots: Sequence[RealAlgebraic], at_root: Sequence[bool],
                    on_gap: Sequence[bool]) -> IntervalSet:
    parts = []
    bounds: List[Optional[RealAlgebraic]] = [None] + list(roots) + [None]
    for i, ok in enumerate(on_gap):
        if ok:
            parts.append(Interval(bounds[i], bounds[i + 1]))
    for r, ok in zip(roots, at_root):
        if ok:
            parts.append(Interval.point(r))
    return IntervalSet(parts)


def _merge_roots(lists: Iterable[Sequence[RealAlgebraic]]) -> List[RealAlgebraic]:
    allr = [r for rs in lists for r in rs]
    allr.sort(key=functools.cmp_to_key(compare))
    out: List[RealAlgebraic] = []
    for r in allr:
        if not out or compare(out[-1], r) != 0:
            out.append(r)
    return out


def _roots_or_empty(p: Polynomial, x: int, arith) -> List[RealAlgebraic]:
    try:
        return isolate_roots(p, x, arith)
    except ZeroPolynomialError:
        return []


def _root_atom_critical(atom: Atom, x: int, arith) -> List[RealAlgebraic]:
    """Points in ``x`` where a root atom with assigned own variable may change truth."""
    v = atom.v
    # roots of p with the own variable at its value
    crit = [_roots_or_empty(atom.p, x, arith)]
    for c in coefficients_in(atom.p, v):
        if x in c.vars:
            crit.append(_roots_or_empty(c, x, arith))
    dp = atom.p.derivative(v)
    if atom.p.degree_in(v) >= 2:
        for s in psc_chain(atom.p, dp, v):
            if x in s.vars:
                crit.append(_roots_or_empty(s, x, arith))
    return _merge_roots(crit)


def atom_feasible_set(atom: Atom, x: int, arith: Mapping[int, RealAlgebraic]) -> IntervalSet:
    """Values of ``x`` making ``atom`` true, all its other variables assigned."""
    arith = {v: a for v, a in arith.items() if v != x}
    if atom.kind == "poly":
        try:
            roots = isolate_roots(atom.p, x, arith)
        except ZeroPolynomialError:
            return IntervalSet.full() if atom.rel == EQ else IntervalSet.empty()
        at_root = [atom.rel == EQ] * len(roots)
        on_gap = []
        for q in _gap_samples(roots):
            pt = dict(arith)
            pt[x] = RealAlgebraic(q)
            on_gap.append(_holds(sign_at_point(atom.p, pt), atom.rel))
        return _set_from_cells(roots, at_root, on_gap)
    if atom.v == x:
        r = _root_value(atom, arith)
        if r is None:
            return IntervalSet.empty()
        if atom.rel == LT:
            return IntervalSet([Interval(None, r)])
        if atom.rel == GT:
            return IntervalSet([Interval(r, None)])
        return IntervalSet([Interval.point(r)])
    crit = _root_atom_critical(atom, x, arith)

    def truth(val: RealAlgebraic) -> bool:
        pt = dict(arith)
        pt[x] = val
        return bool(evaluate_atom(atom, pt))

    at_root = [truth(r) for r in crit]
    on_gap = [truth(RealAlgebraic(q)) for q in _gap_samples(crit)]
    return _set_from_cells(crit, at_root, on_gap)


def literal_feasible_set(db: ClauseDB, l: int, x: int, arith: Mapping[int, RealAlgebraic]) -> IntervalSet:
    s = atom_feasible_set(db.atoms[l >> 1], x, arith)
    return s.complement() if l & 1 else s


# ----------------------------------------------------------------------
# SMT-LIB rendering (debug dumps and lemma logs)
# ----------------------------------------------------------------------
def poly_to_smtlib(p: Polynomial, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for m, c in sorted(p.items(), key=lambda t: (sum(e for _, e in t[0]), t[0]), reverse=True):
        factors = []
        for v, e in m:
            factors.extend([names[v]] * e)
        if not factors:
            terms.append(rational_to_smtlib(Fraction(c)))
            continue
        if c != 1:
            factors.insert(0, rational_to_smtlib(Fraction(c)))
        terms.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
    return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def atom_to_smtlib(atom: Atom, names: Sequence[str]) -> str:
    if atom.kind == "poly":
        return f"({atom.rel} {poly_to_smtlib(atom.p, names)} 0)"
    return f"({atom.rel} {names[atom.v]} (root-obj {poly_to_smtlib(atom.p, names)} {atom.k}))"


def lit_to_smtlib(db: ClauseDB, l: int) -> str:
    atom = db.atoms[l >> 1]
    body = atom_to_smtlib(atom, db.arith_names) if atom else (db.bool_names[l >> 1] or f"b{l >> 1}")
    return f"(not {body})" if l & 1 else body


def clause_to_smtlib(db: ClauseDB, lits: Iterable[int]) -> str:
    parts = [lit_to_smtlib(db, l) for l in lits]
    if not parts:
        return "false"
    return parts[0] if len(parts) == 1 else f"(or {' '.join(parts)})"
