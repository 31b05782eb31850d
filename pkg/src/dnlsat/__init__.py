"""dnlsat: a model-constructing satisfiability solver for nonlinear real arithmetic."""

from .engine import HEURISTICS, Result, Solver, SolverConfig, Stats
from .smtlib import SmtlibError, internalize, parse, parse_file

__version__ = "0.1.0"


def solve_smtlib(text, config=None, **kw) -> Result:
    """Parse an SMT-LIB script and solve its assertions."""
    problem = internalize(parse(text))
    return Solver(problem.db, config, **kw).solve()


__all__ = ["HEURISTICS", "Result", "Solver", "SolverConfig", "Stats", "SmtlibError",
           "internalize", "parse", "parse_file", "solve_smtlib", "__version__"]
