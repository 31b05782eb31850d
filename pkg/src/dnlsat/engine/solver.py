"""The model-constructing search loop.

Pure boolean variables are decided by the CDCL part; arithmetic variables
are assigned sample values from the feasible set left by the clauses that
are univariate in them.  Atoms whose variables are all assigned get their
truth value semantically.  Conflicts are analysed by resolution, with
single-cell explanations providing the theory lemmas.
"""

from __future__ import annotations

import signal
import threading
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from ..explain import ExplainError, Lemma, explain_conflict, lemma_to_smtlib
from ..formula import Clause, ClauseDB, evaluate_atom, literal_feasible_set, negate
from ..realroots import IntervalSet, RealAlgebraic, pick_sample
from .config import SolverConfig
from .order import VarOrder
from .trail import DECISION, SEMANTIC, LazyReason, Trail

SAT, UNSAT, UNKNOWN = "sat", "unsat", "unknown"


class _Interrupted(Exception):
    pass


def _alarm(signum, frame):
    raise _Interrupted()


@dataclass
class Stats:
    decisions: int = 0
    conflicts: int = 0
    restarts: int = 0
    learnt_added: int = 0
    learnt_deleted: int = 0
    propagations: int = 0
    explain_calls: int = 0
    max_stage: int = 0
    wall_ms: float = 0.0

    def as_dict(self) -> Dict[str, object]:
        return dict(self.__dict__)


@dataclass
class Result:
    status: str
    model: Dict[str, object] = field(default_factory=dict)
    reason: Optional[str] = None
    stats: Stats = field(default_factory=Stats)


class RestartState:
    """Geometric restart schedule; the conflict counter resets at each restart."""

    def __init__(self, first: float, inc: float):
        self.first = first
        self.inc = inc
        self.restart_times = 0
        self.conflicts_since_restart = 0

    @property
    def threshold(self) -> float:
        return self.first * self.inc ** self.restart_times

    def due(self) -> bool:
        return self.conflicts_since_restart >= self.threshold


class LemmaGCState:
    """Countdown controlling when learnt clauses are reduced."""

    def __init__(self, lemma_conf: int, inc: float, max_learnts: float):
        self.adjust_confl = float(lemma_conf)
        self.adjust_cnt = int(lemma_conf)
        self.inc = inc
        self.max_learnts = max_learnts

    def tick(self) -> None:
        if self.adjust_cnt > 0:
            self.adjust_cnt -= 1

    def grow(self) -> None:
        self.adjust_confl *= self.inc
        self.adjust_cnt = round(self.adjust_confl)
        self.max_learnts *= self.inc


class Hooks:
    """Optional instrumentation callbacks (all no-ops by default)."""

    def on_decision(self, solver: "Solver", kind: str, var: int) -> None:
        pass

    def on_lemma(self, solver: "Solver", lemma: Lemma, sample: Dict[int, RealAlgebraic],
                 order: List[int]) -> None:
        pass

    def on_restart(self, solver: "Solver") -> None:
        pass

    def on_reduce(self, solver: "Solver", before: List[Clause], deleted: List[Clause]) -> None:
        pass


class Solver:
    def __init__(self, db: ClauseDB, cfg: Optional[SolverConfig] = None, hooks: Optional[Hooks] = None,
                 explain_log: Optional[TextIO] = None):
        self.db = db
        self.cfg = cfg or SolverConfig()
        self.hooks = hooks or Hooks()
        self.explain_log = explain_log
        db.clause_decay = self.cfg.clause_decay
        db.cla_inc = float(self.cfg.clause_bump)
        self.stats = Stats()
        self.trail = Trail(db.num_bvars)
        self.watches: Dict[int, List[Clause]] = defaultdict(list)
        self.atoms_of_var: Dict[int, List[int]] = defaultdict(list)
        self.clauses_of_var: Dict[int, List[Clause]] = defaultdict(list)
        self._registered = 0
        self._register_atoms()
        self.pure_bools = [b for b, a in enumerate(db.atoms) if a is None]
        self.phase: Dict[int, bool] = {b: True for b in self.pure_bools}
        self.order = VarOrder(self.cfg.heuristic, self.pure_bools, db.num_arith, self._max_degrees(),
                              self.cfg.bool_bump, self.cfg.arith_bump, self.cfg.bool_decay, self.cfg.arith_decay)
        self.restart_state = RestartState(self.cfg.restart_first, self.cfg.restart_inc)
        self.gc = LemmaGCState(self.cfg.lemma_conf, self.cfg.lemma_conf_inc,
                               self.cfg.learntsize_factor * len(db.original))
        self.qhead = 0
        self._fs_cache: Dict[tuple, IntervalSet] = {}
        self._restart_pending = False
        self._deadline: Optional[float] = None

    # ------------------------------------------------------------------
    # setup
    # ------------------------------------------------------------------
    def _register_atoms(self) -> None:
        atoms = self.db.atoms
        for b in range(self._registered, len(atoms)):
            a = atoms[b]
            if a is not None:
                for v in sorted(a.vars):
                    self.atoms_of_var[v].append(b)
        self._registered = len(atoms)
        self.trail.grow(len(atoms))

    def _max_degrees(self) -> List[int]:
        deg = [0] * self.db.num_arith
        for c in self.db.original:
            for l in c.lits:
                a = self.db.atoms[l >> 1]
                if a is None:
                    continue
                for v in a.vars:
                    deg[v] = max(deg[v], a.p.degree_in(v))
        return deg

    def _index_clause(self, c: Clause) -> None:
        vs = set()
        for l in c.lits:
            a = self.db.atoms[l >> 1]
            if a is not None:
                vs.update(a.vars)
        for v in sorted(vs):
            self.clauses_of_var[v].append(c)

    def _watch(self, c: Clause) -> None:
        """Put the best two literals first and watch them."""
        if len(c.lits) < 2:
            return
        tr = self.trail

        def rank(l: int):
            v = tr.lit_value(l)
            if v is None:
                return (0, 0)
            if v:
                return (0, -1)
            return (1, -tr.blevel[l >> 1])

        c.lits.sort(key=rank)
        self.watches[c.lits[0]].append(c)
        self.watches[c.lits[1]].append(c)

    # ------------------------------------------------------------------
    # assignment helpers
    # ------------------------------------------------------------------
    def _atom_level(self, b: int) -> int:
        return max(self.trail.alevel[v] for v in self.db.atoms[b].vars)

    def _evaluable(self, b: int) -> bool:
        a = self.db.atoms[b]
        return a is not None and all(v in self.trail.aval for v in a.vars)

    def _assign_semantic(self, b: int) -> None:
        val = evaluate_atom(self.db.atoms[b], self.trail.aval)
        self.trail.assign_bool(2 * b + (0 if val else 1), SEMANTIC, self._atom_level(b))

    def _propagate_lit(self, l: int, reason) -> None:
        self.trail.assign_bool(l, reason)
        self.stats.propagations += 1

    def _backjump(self, target: int) -> None:
        tr = self.trail
        if target >= tr.level:
            return
        for kind, x in tr.entries[tr.lims[target]:]:
            if kind == "b" and x in self.phase:
                self.phase[x] = bool(tr.bval[x])
        popped = tr.backjump(target)
        arith_changed = False
        repush = []
        for kind, x in popped:
            if kind == "a":
                arith_changed = True
                self.order.reinsert_arith(x)
            else:
                a = self.db.atoms[x]
                if a is None:
                    self.order.reinsert_bool(x)
                elif all(v in tr.aval for v in a.vars):
                    repush.append(x)
        if arith_changed:
            self._fs_cache.clear()
        self.qhead = min(self.qhead, len(tr))
        for b in reversed(repush):
            self._assign_semantic(b)

    # ------------------------------------------------------------------
    # propagation
    # ------------------------------------------------------------------
    def propagate(self) -> Optional[Clause]:
        tr = self.trail
        while self.qhead < len(tr.entries):
            kind, x = tr.entries[self.qhead]
            self.qhead += 1
            if kind == "a":
                for b in self.atoms_of_var[x]:
                    if tr.bval[b] is None and self._evaluable(b):
                        self._assign_semantic(b)
                continue
            false_lit = 2 * x + (1 if tr.bval[x] else 0)
            confl = self._propagate_watches(false_lit)
            if confl is not None:
                return confl
        return None

    def _propagate_watches(self, f: int) -> Optional[Clause]:
        tr = self.trail
        ws = self.watches[f]
        keep: List[Clause] = []
        confl = None
        i = 0
        n = len(ws)
        while i < n:
            c = ws[i]
            i += 1
            if c.removed:
                continue
            lits = c.lits
            if lits[0] == f:
                lits[0], lits[1] = lits[1], lits[0]
            first = lits[0]
            if tr.lit_value(first) is True:
                keep.append(c)
                continue
            moved = False
            for k in range(2, len(lits)):
                if tr.lit_value(lits[k]) is not False:
                    lits[1], lits[k] = lits[k], lits[1]
                    self.watches[lits[1]].append(c)
                    moved = True
                    break
            if moved:
                continue
            keep.append(c)
            if tr.lit_value(first) is False:
                confl = c
                keep.extend(ws[i:n])
                break
            self._propagate_lit(first, c)
        self.watches[f] = keep
        return confl

    # ------------------------------------------------------------------
    # decisions
    # ------------------------------------------------------------------
    def decide(self):
        """Make one decision or propagation step; returns SAT, a conflict clause or None."""
        heap = self.order.heap
        tr = self.trail
        while True:
            item = heap.top()
            if item is None:
                return SAT
            vid = item >> 1
            if item & 1:
                if vid in tr.aval:
                    heap.pop()
                    continue
                return self._decide_arith(vid)
            if tr.bval[vid] is not None:
                heap.pop()
                continue
            heap.pop()
            tr.new_level()
            tr.assign_bool(2 * vid + (0 if self.phase[vid] else 1), DECISION)
            self.stats.decisions += 1
            self.hooks.on_decision(self, "bool", vid)
            return None

    def _fs(self, l: int, x: int, sample: Dict[int, RealAlgebraic], k: int) -> IntervalSet:
        key = (l, x, k)
        s = self._fs_cache.get(key)
        if s is None:
            s = literal_feasible_set(self.db, l, x, sample)
            self._fs_cache[key] = s
        return s

    def _true_univariate(self, x: int, sample: Dict[int, RealAlgebraic], before: Optional[int] = None) -> List[int]:
        """True literals on the trail whose atoms are univariate in ``x`` under ``sample``."""
        tr = self.trail
        out = []
        for b in self.atoms_of_var[x]:
            val = tr.bval[b]
            if val is None or (before is not None and tr.bpos[b] >= before):
                continue
            if all(v == x or v in sample for v in self.db.atoms[b].vars):
                out.append(2 * b + (0 if val else 1))
        out.sort(key=lambda l: tr.bpos[l >> 1])
        return out

    def _core(self, lits: Sequence[int], x: int, sample, k: int, extra: Optional[IntervalSet] = None) -> Optional[List[int]]:
        """A small subset of ``lits`` whose feasible sets (with ``extra``) have empty intersection."""
        start = extra if extra is not None else IntervalSet.full()
        s = start
        used = []
        for l in lits:
            t = s & self._fs(l, x, sample, k)
            if t == s:
                continue
            used.append(l)
            s = t
            if s.is_empty():
                break
        if not s.is_empty():
            return None
        i = 0
        while i < len(used):
            rest = used[:i] + used[i + 1:]
            t = start
            for l in rest:
                t = t & self._fs(l, x, sample, k)
                if t.is_empty():
                    break
            if t.is_empty():
                used = rest
            else:
                i += 1
        return used

    def _decide_arith(self, x: int):
        tr = self.trail
        sample = tr.aval
        k = tr.stage
        J = self._true_univariate(x, sample)
        S = IntervalSet.full()
        for l in J:
            S = S & self._fs(l, x, sample, k)
            if S.is_empty():
                break
        if S.is_empty():
            core = self._core(J, x, sample, k)
            return self._learn_lemma(core, x, list(tr.arith_order), dict(sample))
        for c in list(self.clauses_of_var[x]):
            if c.removed:
                continue
            undef = self._univariate_undef(c, x)
            if not undef:
                continue
            feasible, infeasible = [], []
            for l in undef:
                (infeasible if (S & self._fs(l, x, sample, k)).is_empty() else feasible).append(l)
            if infeasible:
                for l in infeasible:
                    self._propagate_lit(negate(l), LazyReason(x, len(tr)))
                return None
            if len(feasible) == 1:
                self._propagate_lit(feasible[0], c)
                return None
            tr.new_level()
            tr.assign_bool(feasible[0], DECISION)
            self.stats.decisions += 1
            self.hooks.on_decision(self, "literal", x)
            return None
        value = pick_sample(S)
        self.order.heap.pop()
        tr.new_level()
        tr.assign_arith(x, value)
        self._fs_cache.clear()
        self.stats.decisions += 1
        self.stats.max_stage = max(self.stats.max_stage, tr.stage)
        self.hooks.on_decision(self, "arith", x)
        return None

    def _univariate_undef(self, c: Clause, x: int) -> Optional[List[int]]:
        tr = self.trail
        undef = []
        for l in c.lits:
            v = tr.lit_value(l)
            if v is True:
                return None
            if v is False:
                continue
            a = self.db.atoms[l >> 1]
            if a is None or x not in a.vars:
                return None
            for u in a.vars:
                if u != x and u not in tr.aval:
                    return None
            undef.append(l)
        return undef

    # ------------------------------------------------------------------
    # lemmas
    # ------------------------------------------------------------------
    def _learn_lemma(self, core: List[int], x: int, order: List[int], sample: Dict[int, RealAlgebraic]) -> Clause:
        self.stats.explain_calls += 1
        lemma = explain_conflict(self.db, core, x, order, sample)
        self.hooks.on_lemma(self, lemma, sample, order)
        if self.explain_log is not None:
            self.explain_log.write(lemma_to_smtlib(self.db, lemma) + "\n")
        return self._add_learnt(lemma.lits)

    def _add_learnt(self, lits: List[int]) -> Clause:
        self._register_atoms()
        tr = self.trail
        for l in lits:
            b = l >> 1
            if tr.bval[b] is None and self._evaluable(b):
                self._assign_semantic(b)
        c = self.db.add_clause(lits, learnt=True)
        self.stats.learnt_added += 1
        self._index_clause(c)
        self._watch(c)
        return c

    def _materialize(self, b: int) -> Clause:
        """Build the lemma behind a lazy propagation."""
        tr = self.trail
        reason: LazyReason = tr.breason[b]
        x, pos = reason.var, reason.pos
        order = [v for v in tr.arith_order if tr.apos[v] < pos]
        sample = {v: tr.aval[v] for v in order}
        k = len(order)
        true_lit = 2 * b + (0 if tr.bval[b] else 1)
        ruled_out = negate(true_lit)
        J = [l for l in self._true_univariate(x, sample, before=pos) if l != true_lit]
        extra = self._fs(ruled_out, x, sample, k)
        core = self._core(J, x, sample, k, extra)
        if core is None:
            raise ExplainError("lazy propagation lost its justification")
        c = self._learn_lemma(core + [ruled_out], x, order, sample)
        tr.breason[b] = c
        return c

    # ------------------------------------------------------------------
    # conflict analysis
    # ------------------------------------------------------------------
    def _bump_clause_vars(self, lits: Sequence[int], seen: set) -> None:
        for l in lits:
            b = l >> 1
            a = self.db.atoms[b]
            if a is None:
                if ("b", b) not in seen:
                    seen.add(("b", b))
                    self.order.bump_bool(b)
            else:
                for v in sorted(a.vars):
                    if ("a", v) not in seen:
                        seen.add(("a", v))
                        self.order.bump_arith(v)

    def analyze(self, confl: Clause) -> bool:
        """Learn from a false clause and backjump; False means unsat."""
        tr = self.trail
        seen: set = set()
        if confl.learnt:
            self.db.bump_clause(confl)
        self._bump_clause_vars(confl.lits, seen)
        lits = list(dict.fromkeys(confl.lits))
        resolved = False
        while True:
            if not lits:
                return False
            L = max(tr.blevel[l >> 1] for l in lits)
            if L == 0:
                return False
            top = [l for l in lits if tr.blevel[l >> 1] == L]
            kind, dvar = tr.decision_at(L)
            if kind == "b":
                if len(top) == 1:
                    break
                cands = [l for l in top if tr.breason[l >> 1] is not DECISION]
            else:
                cands = [l for l in top if tr.breason[l >> 1] is not SEMANTIC]
                if not cands:
                    break
            pick = max(cands, key=lambda l: tr.bpos[l >> 1])
            b = pick >> 1
            reason = tr.breason[b]
            if isinstance(reason, LazyReason):
                reason = self._materialize(b)
            if reason.learnt:
                self.db.bump_clause(reason)
            self._bump_clause_vars(reason.lits, seen)
            true_lit = negate(pick)
            merged = [l for l in lits if l != pick]
            for l in reason.lits:
                if l != true_lit and l not in merged:
                    merged.append(l)
            lits = merged
            resolved = True

        others = [l for l in lits if tr.blevel[l >> 1] != L]
        target = max((tr.blevel[l >> 1] for l in others), default=0)
        if kind == "a":
            for l in top:
                for v in self.db.atoms[l >> 1].vars:
                    if v != dvar:
                        target = max(target, tr.alevel[v])
        if resolved or not confl.learnt:
            clause = self._add_learnt(lits)
        else:
            clause = confl
        self._backjump(target)
        undef = [l for l in clause.lits if tr.lit_value(l) is None]
        if len(undef) == 1 and all(tr.lit_value(l) is False for l in clause.lits if l != undef[0]):
            self._propagate_lit(undef[0], clause)
        return True

    # ------------------------------------------------------------------
    # restarts and lemma GC
    # ------------------------------------------------------------------
    def _after_conflict(self) -> None:
        self.stats.conflicts += 1
        self.order.decay()
        self.db.decay_clause_inc()
        self.gc.tick()
        self.restart_state.conflicts_since_restart += 1
        if self.cfg.restarts_enabled and self.restart_state.due():
            self._restart_pending = True

    def restart(self) -> None:
        self._restart_pending = False
        self._backjump(0)
        self.restart_state.restart_times += 1
        self.restart_state.conflicts_since_restart = 0
        self.stats.restarts += 1
        if self.cfg.lemma_gc_enabled and self.gc.adjust_cnt == 0:
            self.reduce_db()
            self.gc.grow()
        self.hooks.on_restart(self)

    def _locked(self) -> set:
        tr = self.trail
        out = set()
        for kind, x in tr.entries:
            if kind == "b":
                r = tr.breason[x]
                if isinstance(r, Clause):
                    out.add(id(r))
        return out

    def reduce_db(self) -> List[Clause]:
        """Halve the least active learnt clauses while above ``max_learnts``.

        Clauses with fewer than three literals and reasons on the trail are
        never deleted.
        """
        db = self.db
        before = [c for c in db.learnt if not c.removed]
        locked = self._locked()
        deleted: List[Clause] = []
        live = before
        while len(live) > self.gc.max_learnts:
            quota = len(live) // 2
            cands = sorted(live, key=lambda c: c.activity)
            n = 0
            for c in cands:
                if n >= quota:
                    break
                if len(c.lits) < 3 or id(c) in locked:
                    continue
                c.removed = True
                deleted.append(c)
                n += 1
            live = [c for c in live if not c.removed]
            if n == 0:
                break
        if deleted:
            db.learnt = [c for c in db.learnt if not c.removed]
            for v in list(self.clauses_of_var):
                self.clauses_of_var[v] = [c for c in self.clauses_of_var[v] if not c.removed]
        self.stats.learnt_deleted += len(deleted)
        self.hooks.on_reduce(self, before, deleted)
        return deleted

    # ------------------------------------------------------------------
    # main loop
    # ------------------------------------------------------------------
    def _out_of_budget(self) -> Optional[str]:
        if self.cfg.conflict_limit is not None and self.stats.conflicts >= self.cfg.conflict_limit:
            return "conflict limit"
        if self._deadline is not None and time.monotonic() >= self._deadline:
            return "timeout"
        return None

    def _init_clauses(self) -> bool:
        for c in self.db.original:
            self._index_clause(c)
            if not c.lits:
                return False
            if len(c.lits) == 1:
                v = self.trail.lit_value(c.lits[0])
                if v is False:
                    return False
                if v is None:
                    self._propagate_lit(c.lits[0], c)
            else:
                self._watch(c)
        return True

    def solve(self) -> Result:
        t0 = time.monotonic()
        if self.cfg.time_limit is not None:
            self._deadline = t0 + self.cfg.time_limit
        # a single algebraic step can be slow, so the cooperative budget check
        # is backed by an interval timer when running on the main thread
        use_alarm = (self._deadline is not None and hasattr(signal, "setitimer")
                     and threading.current_thread() is threading.main_thread())
        if use_alarm:
            prev = signal.signal(signal.SIGALRM, _alarm)
            signal.setitimer(signal.ITIMER_REAL, self.cfg.time_limit + 0.05)
        model = {}
        try:
            status, reason = self._search()
            if status == SAT:
                model = self._model()
                if not self.check_model():
                    status, reason, model = UNKNOWN, "model check failed", {}
        except ExplainError as e:
            status, reason = UNKNOWN, f"explanation failure: {e}"
        except _Interrupted:
            status, reason, model = UNKNOWN, "timeout", {}
        finally:
            if use_alarm:
                signal.setitimer(signal.ITIMER_REAL, 0)
                signal.signal(signal.SIGALRM, prev)
        self.stats.wall_ms = (time.monotonic() - t0) * 1000.0
        return Result(status, model, reason, self.stats)

    def _search(self):
        if self.db.trivially_false or not self._init_clauses():
            return UNSAT, None
        while True:
            confl = self.propagate()
            if confl is None:
                budget = self._out_of_budget()
                if budget:
                    return UNKNOWN, budget
                if self._restart_pending:
                    self.restart()
                    continue
                step = self.decide()
                if step == SAT:
                    return SAT, None
                if step is None:
                    continue
                confl = step
            if not self.analyze(confl):
                self.stats.conflicts += 1
                return UNSAT, None
            self._after_conflict()

    # ------------------------------------------------------------------
    # models
    # ------------------------------------------------------------------
    def _model(self) -> Dict[str, object]:
        out: Dict[str, object] = {}
        for v, name in enumerate(self.db.arith_names):
            out[name] = self.trail.aval.get(v, RealAlgebraic(0))
        for b in self.pure_bools:
            name = self.db.bool_names[b]
            if name is not None and not name.startswith("!"):
                out[name] = bool(self.trail.bval[b])
        return out

    def check_model(self) -> bool:
        """Exact re-evaluation of every original clause under the final assignment."""
        tr = self.trail
        for c in self.db.original:
            ok = False
            for l in c.lits:
                b = l >> 1
                a = self.db.atoms[b]
                if a is None:
                    val = tr.bval[b]
                else:
                    val = evaluate_atom(a, tr.aval)
                if val is not None and val != bool(l & 1):
                    ok = True
                    break
            if not ok:
                return False
        return True


def solve(db: ClauseDB, cfg: Optional[SolverConfig] = None, **kw) -> Result:
    return Solver(db, cfg, **kw).solve()
