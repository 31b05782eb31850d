from fractions import Fraction
from pathlib import Path

import pytest

from dnlsat import SolverConfig, solve_smtlib
from dnlsat.engine import HEURISTICS, Hooks, LemmaGCState, RestartState, Solver
from dnlsat.realroots import RealAlgebraic, compare
from dnlsat.smtlib import internalize, parse

CURATED = Path(__file__).resolve().parent.parent / "benchmarks" / "curated"


def load(text):
    return internalize(parse(text)).db


def pigeonhole(n):
    """n+1 pigeons in n holes: pure boolean, unsat, a few hundred conflicts."""
    s = [f"(declare-fun p{i}_{j} () Bool)" for i in range(n + 1) for j in range(n)]
    for i in range(n + 1):
        s.append("(assert (or " + " ".join(f"p{i}_{j}" for j in range(n)) + "))")
    for j in range(n):
        for a in range(n + 1):
            for b in range(a + 1, n + 1):
                s.append(f"(assert (or (not p{a}_{j}) (not p{b}_{j})))")
    return "".join(s)


# ----------------------------------------------------------------------
# small end-to-end cases
# ----------------------------------------------------------------------
def test_positive_x_gets_one():
    r = solve_smtlib("(declare-fun x () Real)(assert (> x 0))")
    assert r.status == "sat"
    assert r.model["x"].rational == 1


def test_square_negative_unsat():
    assert solve_smtlib("(declare-fun x () Real)(assert (< (* x x) 0))").status == "unsat"


def test_sqrt_two_model():
    r = solve_smtlib("(declare-fun x () Real)(assert (= (* x x) 2))(assert (> x 0))")
    assert r.status == "sat"
    assert r.model["x"].to_smtlib() == "(root-obj (+ (* x x) (- 2)) 2)"


def test_open_interval_sample():
    r = solve_smtlib("(declare-fun x () Real)(assert (> x 1))(assert (< x 2))")
    assert r.model["x"].rational == Fraction(3, 2)


def test_pure_propagation_needs_no_decision():
    r = solve_smtlib("(declare-fun b () Bool)(declare-fun c () Bool)(assert b)(assert (or (not b) c))")
    assert r.status == "sat" and r.model == {"b": True, "c": True}
    assert r.stats.decisions == 0


def test_single_decision_then_backjump():
    # deciding b true forces both c and not c; the learnt unit flips b
    r = solve_smtlib("(declare-fun b () Bool)(declare-fun c () Bool)"
                     "(assert (or (not b) c))(assert (or (not b) (not c)))")
    assert r.status == "sat" and r.model["b"] is False
    assert r.stats.conflicts == 1


@pytest.mark.parametrize("heuristic", HEURISTICS)
def test_two_circles(heuristic):
    text = ("(declare-fun x () Real)(declare-fun y () Real)"
            "(assert (< (+ (* x x) (* y y)) 1))(assert (< (+ (* (- x 2) (- x 2)) (* y y)) 1))")
    assert solve_smtlib(text, SolverConfig(heuristic=heuristic)).status == "unsat"
    r = solve_smtlib(text.replace("(- x 2)", "(- x 1)"), SolverConfig(heuristic=heuristic))
    assert r.status == "sat"
    x, y = r.model["x"], r.model["y"]
    assert compare(x, RealAlgebraic(0)) > 0 and compare(x, RealAlgebraic(1)) < 0


def test_level_zero_conflict_is_unsat():
    r = solve_smtlib("(declare-fun x () Real)(assert (> x 1))(assert (< x 0))")
    assert r.status == "unsat" and r.stats.decisions == 0


def test_conflict_limit_gives_unknown():
    r = solve_smtlib(pigeonhole(6), SolverConfig(conflict_limit=10))
    assert r.status == "unknown" and r.reason == "conflict limit"


def test_time_limit_gives_unknown():
    r = solve_smtlib(pigeonhole(9), SolverConfig(time_limit=0.3))
    assert r.status == "unknown" and r.reason == "timeout"
    assert r.stats.wall_ms >= 300


# ----------------------------------------------------------------------
# heuristics
# ----------------------------------------------------------------------
class Recorder(Hooks):
    def __init__(self):
        self.decisions = []
        self.violations = []

    def on_decision(self, solver, kind, var):
        self.decisions.append((kind, var))
        tr = solver.trail
        h = solver.cfg.heuristic
        if kind == "arith" and h == "bool_vsids":
            if any(tr.bval[b] is None for b in solver.pure_bools):
                self.violations.append(("arith before bool", var))
        if kind == "bool" and h == "theory_vsids":
            if any(v not in tr.aval for v in range(solver.db.num_arith)):
                self.violations.append(("bool before arith", var))
        if kind == "arith" and h == "default":
            deg = solver.order.max_degree
            if any(v not in tr.aval and deg[v] > deg[var] for v in range(solver.db.num_arith)):
                self.violations.append(("degree order", var))


MIXED = ("(declare-fun x () Real)(declare-fun y () Real)(declare-fun p () Bool)(declare-fun q () Bool)"
         "(assert (or p (> (* x x x) y)))(assert (or q (< (* y y) 2)))(assert (or (not p) (not q) (> x 1)))"
         "(assert (or (= (+ x y) 3) p))")


@pytest.mark.parametrize("heuristic", HEURISTICS)
def test_heuristic_admissibility(heuristic):
    rec = Recorder()
    db = load(MIXED)
    r = Solver(db, SolverConfig(heuristic=heuristic), hooks=rec).solve()
    assert r.status == "sat"
    assert rec.violations == []
    assert rec.decisions


def test_uniform_tie_prefers_boolean():
    rec = Recorder()
    db = load("(declare-fun b () Bool)(declare-fun x () Real)(assert (or b (> x 0)))")
    Solver(db, SolverConfig(heuristic="uniform_vsids"), hooks=rec).solve()
    assert rec.decisions[0][0] == "bool"


def test_default_decides_highest_degree_first():
    rec = Recorder()
    db = load("(declare-fun y () Real)(declare-fun x () Real)"
              "(assert (> (+ (* x x x) (* y y)) 1))")
    Solver(db, SolverConfig(heuristic="default"), hooks=rec).solve()
    first_arith = next(v for k, v in rec.decisions if k == "arith")
    assert db.arith_names[first_arith] == "x"


# ----------------------------------------------------------------------
# restarts and lemma deletion
# ----------------------------------------------------------------------
class Mechanics(Hooks):
    def __init__(self):
        self.restarts = []  # (threshold in force, conflicts since previous restart)
        self.periods = []  # gc period after each restart
        self.reduces = []
        self.activity_ok = True

    def on_restart(self, solver):
        self.periods.append(solver.gc.adjust_confl)

    def on_reduce(self, solver, before, deleted):
        live = [c for c in solver.db.learnt if not c.removed]
        short = sum(1 for c in live if len(c.lits) < 3)
        locked = len(solver._locked())
        self.reduces.append((len(before), len(deleted), len(live), solver.gc.max_learnts, short + locked,
                             [len(c.lits) for c in deleted]))


class WatchedSolver(Solver):
    """Records the schedule and checks that a restart leaves activities alone."""

    def restart(self):
        h = self.hooks
        h.restarts.append((self.restart_state.threshold, self.restart_state.conflicts_since_restart))
        acts = self.order.snapshot()
        clause_acts = {id(c): c.activity for c in self.db.learnt}
        inc = self.db.cla_inc
        super().restart()
        if self.order.snapshot() != acts or self.db.cla_inc != inc:
            h.activity_ok = False
        if any(clause_acts[id(c)] != c.activity for c in self.db.learnt):
            h.activity_ok = False


@pytest.fixture(scope="module")
def php_run():
    hooks = Mechanics()
    s = WatchedSolver(load(pigeonhole(7)), SolverConfig(), hooks=hooks)
    r = s.solve()
    return r, hooks, s


def test_restart_thresholds(php_run):
    r, hooks, _ = php_run
    assert r.status == "unsat"
    assert len(hooks.restarts) >= 3
    for k, (thr, seen) in enumerate(hooks.restarts):
        assert thr == 100 * 1.5 ** k
        assert seen >= thr
    assert [t for t, _ in hooks.restarts[:4]] == [100, 150, 225, 337.5][: len(hooks.restarts)]


def test_gc_period_growth(php_run):
    _, hooks, _ = php_run
    assert hooks.periods[:3] == [150, 225, 337.5]


def test_reduce_bound_and_short_clauses(php_run):
    _, hooks, _ = php_run
    assert hooks.reduces
    assert any(d > 0 for _, d, *_ in hooks.reduces)
    for before, deleted, live, max_learnts, protected, lens in hooks.reduces:
        assert live <= max(max_learnts, protected)
        assert all(n >= 3 for n in lens)


def test_restart_preserves_activities(php_run):
    _, hooks, _ = php_run
    assert hooks.activity_ok


def test_state_objects():
    rs = RestartState(100, 1.5)
    assert [RestartState(100, 1.5).threshold] == [100]
    seq = []
    for _ in range(4):
        seq.append(rs.threshold)
        rs.restart_times += 1
    assert seq == [100, 150, 225, 337.5]
    gc = LemmaGCState(100, 1.5, 10)
    assert gc.adjust_cnt == 100
    for _ in range(150):
        gc.tick()
    assert gc.adjust_cnt == 0
    gc.grow()
    assert (gc.adjust_confl, gc.adjust_cnt, gc.max_learnts) == (150, 150, 15)


def _solver_with_learnts(lengths, max_learnts):
    names = [f"b{i}" for i in range(6)]
    text = "".join(f"(declare-fun {n} () Bool)" for n in names) + "(assert (or b0 b1))"
    db = load(text)
    s = Solver(db, SolverConfig())
    out = []
    for i, n in enumerate(lengths):
        c = db.add_clause([2 * ((i + v) % 6) + ((i >> v) & 1) for v in range(n)], learnt=True)
        c.activity = float(i)
        out.append(c)
    s.gc.max_learnts = max_learnts
    return s, out


def test_reduce_db_halves_least_active():
    s, cs = _solver_with_learnts([3] * 12, 10)
    deleted = s.reduce_db()
    assert len(deleted) == 6
    assert set(map(id, deleted)) == set(map(id, cs[:6]))


def test_reduce_db_keeps_binary_clauses():
    s, cs = _solver_with_learnts([2] + [3] * 11, 4)
    deleted = s.reduce_db()
    assert cs[0] not in deleted
    assert len([c for c in s.db.learnt if not c.removed]) <= 4 + 1


def test_reduce_db_below_bound_is_noop():
    s, _ = _solver_with_learnts([3] * 8, 10)
    assert s.reduce_db() == []


def test_restart_without_zero_counter_keeps_learnts():
    s, cs = _solver_with_learnts([3] * 12, 1)
    s.gc.adjust_cnt = 5
    s.restart()
    assert all(not c.removed for c in cs)
    assert s.restart_state.restart_times == 1


def test_no_restart_flag():
    r = solve_smtlib(pigeonhole(6), SolverConfig(restarts_enabled=False))
    assert r.status == "unsat" and r.stats.restarts == 0


def test_no_lemma_gc_flag():
    r = solve_smtlib(pigeonhole(7), SolverConfig(lemma_gc_enabled=False))
    assert r.status == "unsat" and r.stats.learnt_deleted == 0


# ----------------------------------------------------------------------
# determinism and corpus smoke
# ----------------------------------------------------------------------
def _fingerprint(r):
    st = r.stats.as_dict()
    st.pop("wall_ms")
    model = {k: (v.to_smtlib() if isinstance(v, RealAlgebraic) else v) for k, v in r.model.items()}
    return r.status, st, model


@pytest.mark.parametrize("heuristic", HEURISTICS)
def test_determinism(heuristic):
    files = sorted(CURATED.glob("*.smt2"))[::10]
    for f in files:
        text = f.read_text()
        a = solve_smtlib(text, SolverConfig(heuristic=heuristic, seed=5))
        b = solve_smtlib(text, SolverConfig(heuristic=heuristic, seed=5))
        assert _fingerprint(a) == _fingerprint(b), f.name


def test_unknown_heuristic_rejected():
    with pytest.raises(ValueError):
        SolverConfig(heuristic="random")
