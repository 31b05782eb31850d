"""Single-cell CAD explanations.

Given literals that cannot hold together for the conflict variable under
the current assignment, build a clause that is valid over the reals and
false at the assignment: the negated core plus the negation of a
cylindrical cell around the sample point.  Variables are eliminated
top-down, starting at the conflict variable and continuing through the
assigned variables in reverse assignment order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Polynomial, coefficients_in, psc_chain
from .formula import Atom, ClauseDB, negate
from .realroots import RealAlgebraic, ZeroPolynomialError, compare, isolate_roots, sign_at_point


class ExplainError(RuntimeError):
    """Explanation could not be produced; the caller must give up soundly."""


@dataclass
class Lemma:
    lits: List[int]
    core: List[int]
    cell: List[int] = field(default_factory=list)  # cell conditions (true at the sample)
    new_atoms: List[Atom] = field(default_factory=list)
    elim_order: List[int] = field(default_factory=list)
    var: int = -1


class _PolySet:
    """Insertion-ordered set of canonical non-constant polynomials."""

    def __init__(self):
        self.items: Dict[Polynomial, None] = {}

    def add(self, p: Polynomial) -> None:
        if p.is_constant():
            return
        q, _ = p.canonical()
        self.items.setdefault(q, None)

    def __iter__(self):
        return iter(list(self.items))

    def remove(self, p: Polynomial) -> None:
        del self.items[p]


def _nonzero_at(p: Polynomial, sample: Mapping[int, RealAlgebraic]) -> bool:
    if p.is_constant():
        return not p.is_zero()
    return sign_at_point(p, sample) != 0


def _truncate(p: Polynomial, v: int, deg: int) -> Polynomial:
    """Terms of ``p`` whose degree in ``v`` is at most ``deg``."""
    return Polynomial({m: c for m, c in p.items() if dict(m).get(v, 0) <= deg})


def add_coefficients(ps: _PolySet, p: Polynomial, v: int, sample) -> Optional[Polynomial]:
    """Add leading coefficients of ``p`` in ``v`` down to the first one not
    vanishing at ``sample``; return the correspondingly truncated ``p`` (None
    when every coefficient vanishes)."""
    coeffs = coefficients_in(p, v)
    d = len(coeffs) - 1
    for i, c in enumerate(coeffs):
        ps.add(c)
        if _nonzero_at(c, sample):
            k = d - i
            return p if i == 0 else _truncate(p, v, k)
    return None


def add_psc(ps: _PolySet, p: Polynomial, q: Polynomial, v: int, sample) -> None:
    """Add principal subresultant coefficients up to the first nonzero one."""
    for s in psc_chain(p, q, v):
        ps.add(s)
        if _nonzero_at(s, sample):
            return


def project_step(polys: Iterable[Polynomial], v: int, sample: Mapping[int, RealAlgebraic]) -> List[Polynomial]:
    """Model-based projection eliminating ``v``; ``sample`` covers the lower variables."""
    out = _PolySet()
    reduced = []
    for p in polys:
        if p.is_zero():
            raise ValueError("cannot project the zero polynomial")
        if p.degree_in(v) < 1:
            raise ValueError("polynomial does not mention the eliminated variable")
        r = add_coefficients(out, p, v, sample)
        if r is not None and r.degree_in(v) >= 1:
            reduced.append(r)
    for r in reduced:
        if r.degree_in(v) >= 2:
            add_psc(out, r, r.derivative(v), v, sample)
    for i in range(len(reduced)):
        for j in range(i + 1, len(reduced)):
            add_psc(out, reduced[i], reduced[j], v, sample)
    return list(out)


def _root_atom_polys(ps: _PolySet, atom: Atom) -> None:
    """Polynomials whose sign invariance fixes a root atom's truth value."""
    p, v = atom.p, atom.v
    ps.add(p)
    for c in coefficients_in(p, v):
        ps.add(c)
    if p.degree_in(v) >= 2:
        for s in psc_chain(p, p.derivative(v), v):
            ps.add(s)


class _CellBuilder:
    def __init__(self, db: ClauseDB):
        self.db = db
        self.cell: List[int] = []

    def _lit(self, y: int, p: Polynomial, k: int, rel: str) -> int:
        coeffs = coefficients_in(p, y)
        if len(coeffs) == 2 and coeffs[0].is_constant():
            # y rel -c0/c1 is a plain polynomial constraint
            c1 = coeffs[0].constant_value()
            if c1 < 0:
                rel = {"<": ">", ">": "<", "=": "="}[rel]
            return self.db.mk_poly_lit(p, rel)
        return self.db.mk_root_lit(y, k, p, rel)

    def bound(self, y: int, polys: Sequence[Polynomial], lower: Mapping[int, RealAlgebraic],
              value: RealAlgebraic) -> None:
        below = above = None  # (root, poly, index)
        for p in sorted(polys, key=lambda q: (q.degree_in(y), q.total_degree(), len(q.terms))):
            try:
                roots = isolate_roots(p, y, lower)
            except ZeroPolynomialError:
                continue
            for k, r in enumerate(roots, start=1):
                c = compare(r, value)
                if c == 0:
                    self.cell.append(self._lit(y, p, k, "="))
                    return
                if c < 0 and (below is None or compare(r, below[0]) > 0):
                    below = (r, p, k)
                if c > 0 and (above is None or compare(r, above[0]) < 0):
                    above = (r, p, k)
        if below is not None:
            self.cell.append(self._lit(y, below[1], below[2], ">"))
        if above is not None:
            self.cell.append(self._lit(y, above[1], above[2], "<"))


def explain_conflict(db: ClauseDB, core: Sequence[int], x: int, order: Sequence[int],
                     sample: Mapping[int, RealAlgebraic]) -> Lemma:
    """Lemma ``not core or not cell`` for a core infeasible in ``x``.

    ``order`` lists the assigned arithmetic variables in assignment order and
    ``sample`` holds their values.
    """
    try:
        return _explain(db, core, x, order, sample)
    except ExplainError:
        raise
    except (ArithmeticError, ValueError, AssertionError, RecursionError) as e:
        raise ExplainError(f"explanation failed: {e}") from e


def _explain(db: ClauseDB, core: Sequence[int], x: int, order: Sequence[int],
             sample: Mapping[int, RealAlgebraic]) -> Lemma:
    before = db.num_bvars
    pos = {v: i for i, v in enumerate(order)}
    pos[x] = len(order)
    levels = list(order) + [x]

    ps = _PolySet()
    for l in core:
        atom = db.atoms[l >> 1]
        if atom is None:
            raise ExplainError("boolean literal in an arithmetic core")
        if atom.kind == "poly" or atom.v == x:
            ps.add(atom.p)
        else:
            _root_atom_polys(ps, atom)

    def level_of(p: Polynomial) -> int:
        try:
            return max(pos[v] for v in p.vars)
        except KeyError:
            raise ExplainError("polynomial mentions an unassigned variable") from None

    builder = _CellBuilder(db)
    elim = []
    for lvl in range(len(levels) - 1, -1, -1):
        y = levels[lvl]
        elim.append(y)
        here = [p for p in ps if level_of(p) == lvl]
        for p in here:
            ps.remove(p)
        if not here:
            continue
        lower = {v: sample[v] for v in levels[:lvl]}
        if y != x:
            builder.bound(y, here, lower, sample[y])
        if lvl == 0:
            continue
        for q in project_step(here, y, lower):
            ps.add(q)

    lits = [negate(l) for l in core] + [negate(c) for c in builder.cell]
    seen = set()
    clause = []
    for l in lits:
        if l not in seen:
            seen.add(l)
            clause.append(l)
    new_atoms = [a for a in db.atoms[before:] if a is not None]
    return Lemma(clause, list(core), builder.cell, new_atoms, elim, x)


def lemma_to_smtlib(db: ClauseDB, lemma: Lemma) -> str:
    from .formula import clause_to_smtlib, lit_to_smtlib

    core = " ".join(lit_to_smtlib(db, l) for l in lemma.core)
    return f"; core over {db.arith_names[lemma.var]}: (and {core})\n{clause_to_smtlib(db, lemma.lits)}"
