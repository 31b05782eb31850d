"""Solver configuration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

HEURISTICS = ("default", "bool_vsids", "theory_vsids", "uniform_vsids")


@dataclass(frozen=True)
class SolverConfig:
    heuristic: str = "default"
    arith_decay: float = 0.95
    bool_decay: float = 0.95
    arith_bump: float = 1.0
    bool_bump: float = 1.0
    clause_decay: float = 0.999
    clause_bump: float = 1.0
    lemma_conf: int = 100
    lemma_conf_inc: float = 1.5
    learntsize_factor: float = 1 / 3
    restart_first: int = 100
    restart_inc: float = 1.5
    restarts_enabled: bool = True
    lemma_gc_enabled: bool = True
    conflict_limit: Optional[int] = None
    time_limit: Optional[float] = None  # seconds
    seed: int = 0

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}; expected one of {', '.join(HEURISTICS)}")
        for name in ("arith_decay", "bool_decay", "clause_decay"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        for name in ("arith_bump", "bool_bump", "clause_bump"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("lemma_conf_inc", "restart_inc"):
            if getattr(self, name) <= 1:
                raise ValueError(f"{name} must exceed 1")
        if self.restart_first < 1 or self.lemma_conf < 1:
            raise ValueError("restart_first and lemma_conf must be at least 1")
        if self.learntsize_factor <= 0:
            raise ValueError("learntsize_factor must be positive")
