"""Search engine: configuration, variable order, trail and the solver loop."""

from .config import HEURISTICS, SolverConfig
from .solver import SAT, UNKNOWN, UNSAT, Hooks, LemmaGCState, RestartState, Result, Solver, Stats, solve

__all__ = ["HEURISTICS", "SolverConfig", "Solver", "Result", "Stats", "Hooks", "RestartState",
           "LemmaGCState", "solve", "SAT", "UNSAT", "UNKNOWN"]
