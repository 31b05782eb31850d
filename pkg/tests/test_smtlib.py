import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnlsat.formula import evaluate_literal, Assignment
from dnlsat.smtlib import (App, ParseError, SmtlibError, SortError, Sym, UnsupportedError, internalize, parse,
                           print_script, term_to_str)

HEADER = "(set-logic QF_NRA)(declare-fun x () Real)(declare-fun y () Real)\n"


def test_roundtrip_example():
    text = HEADER + """
    (declare-const p Bool)
    (define-fun two () Real 2.0)
    (assert (let ((s (* x x))) (and (< s two) (or p (>= (+ x y) (/ 1 3))))))
    (assert (distinct x y))
    (check-sat)
    (exit)
    """
    s = parse(text)
    again = parse(print_script(s))
    assert again == s
    assert len(s.assertions) == 2


def test_status_and_info():
    s = parse('(set-info :status unsat)(set-info :source |two\nlines|)(set-logic QF_NRA)(check-sat)')
    assert s.status == "unsat"


@pytest.mark.parametrize("text,err", [
    ("(assert (< x 1)", ParseError),  # unbalanced
    ("(set-logic QF_NRA)(assert (< z 1))", SortError),  # undeclared
    ("(set-logic QF_NRA)(declare-fun x () Real)(assert (+ x 1))", SortError),  # not Bool
    ("(set-logic QF_NRA)(declare-fun x () Real)(assert (< (/ 1 0) x))", ParseError),
    ("(set-logic QF_NRA)(declare-fun x () Real)(assert (< (/ 1 x) 0))", UnsupportedError),
    ("(set-logic QF_NIA)", UnsupportedError),
    ("(set-logic QF_NRA)(declare-fun n () Int)", UnsupportedError),
    ("(set-logic QF_NRA)(declare-fun f (Real) Real)", UnsupportedError),
    ("(set-logic QF_NRA)(declare-fun x () Real)(declare-fun x () Real)", ParseError),
    ("(set-logic QF_NRA)(declare-fun x () Real)(assert (< (exp x) 1))", UnsupportedError),
    ("(set-logic QF_NRA)(push 1)", UnsupportedError),
    ("(set-logic QF_NRA)(declare-fun x () Real)(assert (< x -2))", SortError),
    (b"\xff\xfe", ParseError),
])
def test_error_classes(text, err):
    with pytest.raises(err) as info:
        parse(text)
    assert isinstance(info.value, SmtlibError)


def test_error_positions():
    with pytest.raises(SmtlibError) as info:
        parse("(set-logic QF_NRA)\n(assert (< zz 1))")
    assert info.value.line == 2
    assert "zz" in str(info.value)


def test_comments_strings_and_quoted_symbols():
    s = parse('; leading comment\n(set-logic QF_NRA)(declare-fun |odd name| () Real)'
              '(assert (> |odd name| 0.5)) ; trailing\n(set-info :note "a ""quoted"" string")')
    db = internalize(s).db
    assert db.arith_names == ["odd name"]
    assert "|odd name|" in print_script(s)


def test_tseitin_shape():
    s = parse("(set-logic QF_NRA)(declare-fun a () Bool)(declare-fun b () Bool)(declare-fun c () Bool)"
              "(assert (or a (and b c)))")
    prob = internalize(s)
    db = prob.db
    # one fresh variable for the conjunction: t -> b, t -> c, (b & c) -> t, plus the root clause
    fresh = [n for n in db.bool_names if n and n.startswith("!t")]
    assert len(fresh) == 1
    assert len(db.original) == 4
    assert sorted(len(c) for c in db.original) == [2, 2, 2, 3]


def test_top_level_and_splits_into_clauses():
    s = parse(HEADER + "(assert (and (< x 1) (> y 2) (or (= x y) (< x y))))")
    db = internalize(s).db
    assert sorted(len(c) for c in db.original) == [1, 1, 2]
    assert all(n is None or not n.startswith("!t") for n in db.bool_names)


def test_chained_relations_and_constants():
    s = parse(HEADER + "(assert (< 0 x y 3))(assert (= (* 2 (- 3 1)) 4))")
    db = internalize(s).db
    assert sorted(len(c) for c in db.original) == [1, 1, 1]
    ok = Assignment({0: 1, 1: 2})
    for c in db.original:
        assert all(evaluate_literal(db, l, ok) for l in c)


def test_trivially_false_constant_assertion():
    db = internalize(parse("(set-logic QF_NRA)(assert (< 2 1))")).db
    assert db.trivially_false


# ----------------------------------------------------------------------
# equisatisfiability of the Tseitin encoding, by brute force
# ----------------------------------------------------------------------
NAMES = ["a", "b", "c"]


def _bool_terms(depth):
    leaf = st.sampled_from([Sym(n) for n in NAMES] + [Sym("true"), Sym("false")])
    if depth == 0:
        return leaf
    sub = _bool_terms(depth - 1)
    return st.one_of(
        leaf,
        st.builds(lambda a: App("not", (a,)), sub),
        st.builds(lambda op, xs: App(op, tuple(xs)),
                  st.sampled_from(["and", "or", "xor", "=>", "=", "distinct"]),
                  st.lists(sub, min_size=2, max_size=3)),
        st.builds(lambda a, b, c: App("ite", (a, b, c)), sub, sub, sub),
    )


def _eval(t, env):
    if isinstance(t, Sym):
        return {"true": True, "false": False}.get(t.name, env.get(t.name))
    vs = [_eval(a, env) for a in t.args]
    op = t.op
    if op == "not":
        return not vs[0]
    if op == "and":
        return all(vs)
    if op == "or":
        return any(vs)
    if op == "xor":
        acc = vs[0]
        for v in vs[1:]:
            acc = acc != v
        return acc
    if op == "=>":
        acc = vs[-1]
        for v in reversed(vs[:-1]):
            acc = (not v) or acc
        return acc
    if op == "=":
        return all(a == b for a, b in zip(vs, vs[1:]))
    if op == "distinct":
        return len(set(vs)) == len(vs)
    return vs[1] if vs[0] else vs[2]


def _cnf_satisfiable_under(db, fixed):
    free = [b for b in range(db.num_bvars) if b not in fixed]
    for bits in itertools.product([False, True], repeat=len(free)):
        vals = dict(fixed)
        vals.update(zip(free, bits))
        if all(any(vals[l >> 1] != bool(l & 1) for l in c) for c in db.original):
            return True
    return False


@given(_bool_terms(2))
@settings(max_examples=120, deadline=None)
def test_tseitin_equisatisfiable(t):
    decls = "".join(f"(declare-fun {n} () Bool)" for n in NAMES)
    prob = internalize(parse(f"(set-logic QF_NRA){decls}(assert {term_to_str(t)})"))
    db = prob.db
    if db.num_bvars > 14:
        return
    for bits in itertools.product([False, True], repeat=len(NAMES)):
        env = dict(zip(NAMES, bits))
        fixed = {prob.bool_vars[n]: env[n] for n in NAMES}
        expected = _eval(t, env)
        got = (not db.trivially_false) and _cnf_satisfiable_under(db, fixed)
        assert got == expected, (term_to_str(t), env)


@given(st.fractions(min_value=-50, max_value=50, max_denominator=40))
def test_numeral_forms(q):
    num = f"(/ {abs(q.numerator)} {q.denominator})"
    text = f"(- {num})" if q < 0 else num
    s = parse(HEADER + f"(assert (= x {text}))")
    db = internalize(s).db
    (c,) = db.original
    assert evaluate_literal(db, c.lits[0], Assignment({0: q})) is True
    assert evaluate_literal(db, c.lits[0], Assignment({0: q + Fraction(1, 99)})) is False
