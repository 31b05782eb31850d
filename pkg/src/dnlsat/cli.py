"""Command-line driver: ``dnlsat solve`` and ``dnlsat bench``."""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .engine import HEURISTICS, Solver, SolverConfig
from .realroots import RealAlgebraic
from .smtlib import SmtlibError, internalize, parse_file

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 2, 3
CLI_HEURISTICS = [h.replace("_", "-") for h in HEURISTICS]
CSV_HEADER = ["instance", "heuristic", "status", "wall_ms", "conflicts", "decisions", "restarts"]


@dataclass
class RunRecord:
    instance: str
    heuristic: str
    status: str  # sat, unsat, unknown, timeout or error
    wall_ms: float = 0.0
    conflicts: int = 0
    decisions: int = 0
    restarts: int = 0
    learnt_added: int = 0
    learnt_deleted: int = 0
    detail: str = ""

    def csv_row(self) -> List[str]:
        return [self.instance, self.heuristic, self.status, f"{self.wall_ms:.1f}",
                str(self.conflicts), str(self.decisions), str(self.restarts)]


# ----------------------------------------------------------------------
# argument handling
# ----------------------------------------------------------------------
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timeout", type=float, default=1200.0, metavar="SECONDS",
                   help="per-run time limit (default 1200)")
    p.add_argument("--seed", type=int, default=None, help="seed (falls back to $DNLSAT_SEED, then 0)")
    p.add_argument("--model", action="store_true", help="print models of satisfiable instances")
    p.add_argument("--stats", action="store_true", help="print statistics as key=value lines to stderr")
    p.add_argument("--no-restart", action="store_true", help="disable restarts")
    p.add_argument("--no-lemma-gc", action="store_true", help="disable learnt clause deletion")
    p.add_argument("--restart-first", type=int, default=None, metavar="N")
    p.add_argument("--restart-inc", type=float, default=None, metavar="F")
    p.add_argument("--lemma-conf", type=int, default=None, metavar="N")
    p.add_argument("--lemma-conf-inc", type=float, default=None, metavar="F")
    p.add_argument("--conflict-limit", type=int, default=None, metavar="N",
                   help="give up after N conflicts")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="dnlsat", description="MCSAT solver for quantifier-free nonlinear real arithmetic")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", help="solve one SMT-LIB file")
    s.add_argument("path")
    s.add_argument("--heuristic", choices=CLI_HEURISTICS, default="default")
    s.add_argument("--debug-explain", action="store_true",
                   help="dump every explanation lemma with its core to stderr")
    _common(s)

    b = sub.add_parser("bench", help="run a directory of instances under several heuristics")
    b.add_argument("paths", nargs="+", help=".smt2 files or directories")
    b.add_argument("--heuristic", choices=CLI_HEURISTICS, default=None,
                   help="run a single heuristic")
    b.add_argument("--heuristics", default=None, metavar="LIST|all",
                   help="comma separated heuristic names, or 'all' (default)")
    b.add_argument("--jobs", type=int, default=1, metavar="N")
    b.add_argument("--cumulative", default="dnlsat_cumulative.csv", metavar="FILE",
                   help="where to write the solved-within-time table")
    _common(b)
    return top


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("DNLSAT_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"dnlsat: error: DNLSAT_SEED is not an integer: {env!r}")
    return 0


def config_kwargs(args, heuristic: str) -> Dict[str, object]:
    kw: Dict[str, object] = dict(
        heuristic=heuristic.replace("-", "_"),
        time_limit=args.timeout,
        seed=_seed(args),
        restarts_enabled=not args.no_restart,
        lemma_gc_enabled=not args.no_lemma_gc,
        conflict_limit=args.conflict_limit,
    )
    for name in ("restart_first", "restart_inc", "lemma_conf", "lemma_conf_inc"):
        val = getattr(args, name)
        if val is not None:
            kw[name] = val
    return kw


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------
def format_model(model: Dict[str, object]) -> str:
    lines = ["(model"]
    for name, val in model.items():
        if isinstance(val, bool):
            lines.append(f"  (define-fun {name} () Bool {'true' if val else 'false'})")
        else:
            assert isinstance(val, RealAlgebraic)
            lines.append(f"  (define-fun {name} () Real {val.to_smtlib()})")
    lines.append(")")
    return "\n".join(lines)


def format_stats(stats, extra: Dict[str, object]) -> str:
    items = dict(extra)
    items.update(stats.as_dict())
    items["wall_ms"] = f"{items['wall_ms']:.1f}"
    return "\n".join(f"{k}={v}" for k, v in items.items())


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------
def cmd_solve(args) -> int:
    try:
        problem = internalize(parse_file(args.path))
    except OSError as e:
        print(f"dnlsat: error: cannot read {args.path}: {e.strerror or e}", file=sys.stderr)
        return EXIT_ERROR
    except SmtlibError as e:
        print(f"dnlsat: {args.path}: {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        cfg = SolverConfig(**config_kwargs(args, args.heuristic))
    except ValueError as e:
        print(f"dnlsat: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    log = sys.stderr if args.debug_explain else None
    result = Solver(problem.db, cfg, explain_log=log).solve()
    print(result.status)
    if args.model and result.status == "sat":
        print(format_model(result.model))
    sys.stdout.flush()
    if args.stats:
        extra = {"status": result.status, "heuristic": args.heuristic, "seed": cfg.seed}
        if result.reason:
            extra["reason"] = result.reason
        print(format_stats(result.stats, extra), file=sys.stderr)
    return EXIT_OK if result.status in ("sat", "unsat") else EXIT_UNKNOWN


# ----------------------------------------------------------------------
# bench
# ----------------------------------------------------------------------
def collect_instances(paths: Sequence[str]) -> List[tuple]:
    """(display name, path) pairs; directories are searched recursively for .smt2 files."""
    out = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            for f in sorted(path.rglob("*.smt2")):
                out.append((f.relative_to(path).as_posix(), str(f)))
        else:
            out.append((path.as_posix(), str(path)))
    return out


def run_one(name: str, path: str, heuristic: str, kw: Dict[str, object], want_model: bool = False) -> tuple:
    """Solve one instance; never raises.  Returns (RunRecord, model text or None)."""
    try:
        problem = internalize(parse_file(path))
    except OSError as e:
        return RunRecord(name, heuristic, "error", detail=f"unreadable: {e.strerror or e}"), None
    except SmtlibError as e:
        return RunRecord(name, heuristic, "error", detail=str(e)), None
    result = Solver(problem.db, SolverConfig(**kw)).solve()
    st = result.stats
    status = result.status
    if status == "unknown" and result.reason == "timeout":
        status = "timeout"
    rec = RunRecord(name, heuristic, status, st.wall_ms, st.conflicts, st.decisions, st.restarts,
                    st.learnt_added, st.learnt_deleted, result.reason or "")
    model = format_model(result.model) if want_model and result.status == "sat" else None
    return rec, model


def _run_star(job):
    return run_one(*job)


def cumulative_table(records: Sequence[RunRecord], heuristics: Sequence[str]) -> List[List[str]]:
    """Rows ``heuristic,solved,wall_ms``: the k-th fastest solved run of each heuristic."""
    rows = []
    for h in heuristics:
        times = sorted(r.wall_ms for r in records if r.heuristic == h and r.status in ("sat", "unsat"))
        for k, t in enumerate(times, start=1):
            rows.append([h, str(k), f"{t:.1f}"])
    return rows


def _heuristic_list(args) -> List[str]:
    if args.heuristics is not None and args.heuristic is not None:
        raise ValueError("--heuristic and --heuristics are mutually exclusive")
    if args.heuristic is not None:
        return [args.heuristic]
    if args.heuristics is None or args.heuristics.strip() == "all":
        return list(CLI_HEURISTICS)
    names = [h.strip() for h in args.heuristics.split(",") if h.strip()]
    bad = [h for h in names if h not in CLI_HEURISTICS]
    if bad or not names:
        raise ValueError(f"unknown heuristic(s): {', '.join(bad) or '(none)'}; "
                         f"choose from {', '.join(CLI_HEURISTICS)}")
    return names


def cmd_bench(args) -> int:
    try:
        heuristics = _heuristic_list(args)
        kws = {h: config_kwargs(args, h) for h in heuristics}
        for kw in kws.values():
            SolverConfig(**kw)
    except ValueError as e:
        print(f"dnlsat: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    if args.jobs < 1:
        print("dnlsat: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    instances = collect_instances(args.paths)
    jobs = [(name, path, h, kws[h], args.model) for name, path in instances for h in heuristics]
    if args.jobs == 1:
        results = [_run_star(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_star, jobs))

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(CSV_HEADER)
    records = []
    for rec, model in results:
        records.append(rec)
        out.writerow(rec.csv_row())
        if model is not None:
            print(f"; {rec.instance} {rec.heuristic}\n{model}", file=sys.stderr)
        if args.stats:
            extra = {k: v for k, v in asdict(rec).items() if k != "detail"}
            print(" ".join(f"{k}={v}" for k, v in extra.items()), file=sys.stderr)
    sys.stdout.flush()

    with open(args.cumulative, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["heuristic", "solved", "wall_ms"])
        w.writerows(cumulative_table(records, heuristics))

    report_summary(records, heuristics, sys.stderr)
    return EXIT_OK


def report_summary(records: Sequence[RunRecord], heuristics: Sequence[str], stream) -> None:
    """Solved counts per heuristic and any cross-heuristic disagreement (report only)."""
    done = {h: [r for r in records if r.heuristic == h and r.status in ("sat", "unsat")] for h in heuristics}
    solved = {h: len(rs) for h, rs in done.items()}
    spent = {h: sum(r.wall_ms for r in rs) for h, rs in done.items()}
    for h in heuristics:
        print(f"# {h}: solved {solved[h]} in {spent[h]:.1f} ms", file=stream)
    if solved:
        best = max(solved.values())
        top = [h for h in heuristics if solved[h] == best]
        print(f"# most solved: {', '.join(top)}", file=stream)
        if len(top) > 1:
            print(f"# fastest of those: {min(top, key=lambda h: spent[h])}", file=stream)
    for name, statuses in disagreements(records).items():
        print(f"# DISAGREEMENT on {name}: {statuses}", file=stream)


def disagreements(records: Sequence[RunRecord]) -> Dict[str, Dict[str, str]]:
    by: Dict[str, Dict[str, str]] = {}
    for r in records:
        by.setdefault(r.instance, {})[r.heuristic] = r.status
    out = {}
    for name, st in by.items():
        definite = {s for s in st.values() if s in ("sat", "unsat")}
        if len(definite) > 1:
            out[name] = st
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return cmd_solve(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
