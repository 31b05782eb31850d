"""The search trail: boolean and arithmetic assignments with levels and stages.

Levels count decisions of either kind; the stage is the number of
arithmetic variables assigned so far.  Semantic entries record the truth
value of an atom whose variables are all assigned; their level is the
highest level among those variables, which may be lower than the level at
which they were pushed.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..realroots import RealAlgebraic

DECISION = "decision"
SEMANTIC = "semantic"


class LazyReason:
    """Propagation whose reason lemma is built only if analysis needs it.

    ``var`` is the arithmetic variable whose feasible set ruled the literal
    out and ``pos`` the trail length when the propagation happened.
    """

    __slots__ = ("var", "pos")

    def __init__(self, var: int, pos: int):
        self.var = var
        self.pos = pos

    def __repr__(self) -> str:
        return f"LazyReason(x{self.var}, @{self.pos})"


class Trail:
    def __init__(self, num_bvars: int):
        self.entries: List[Tuple[str, int]] = []  # ("b", bvar) or ("a", var)
        self.lims: List[int] = []
        self.bval: List[Optional[bool]] = [None] * num_bvars
        self.blevel: List[int] = [0] * num_bvars
        self.breason: List[object] = [None] * num_bvars
        self.bpos: List[int] = [0] * num_bvars
        self.aval: Dict[int, RealAlgebraic] = {}
        self.alevel: Dict[int, int] = {}
        self.apos: Dict[int, int] = {}
        self.arith_order: List[int] = []

    def grow(self, num_bvars: int) -> None:
        extra = num_bvars - len(self.bval)
        if extra > 0:
            self.bval.extend([None] * extra)
            self.blevel.extend([0] * extra)
            self.breason.extend([None] * extra)
            self.bpos.extend([0] * extra)

    @property
    def level(self) -> int:
        return len(self.lims)

    @property
    def stage(self) -> int:
        return len(self.arith_order)

    def __len__(self) -> int:
        return len(self.entries)

    def new_level(self) -> None:
        self.lims.append(len(self.entries))

    # -- values --------------------------------------------------------
    def lit_value(self, l: int) -> Optional[bool]:
        v = self.bval[l >> 1]
        if v is None:
            return None
        return v != bool(l & 1)

    def lit_level(self, l: int) -> int:
        return self.blevel[l >> 1]

    # -- assignment ----------------------------------------------------
    def assign_bool(self, l: int, reason, level: Optional[int] = None) -> None:
        b = l >> 1
        assert self.bval[b] is None, "boolean variable assigned twice"
        self.bval[b] = not (l & 1)
        self.blevel[b] = self.level if level is None else level
        self.breason[b] = reason
        self.bpos[b] = len(self.entries)
        self.entries.append(("b", b))

    def assign_arith(self, v: int, value: RealAlgebraic) -> None:
        assert v not in self.aval, "arithmetic variable assigned twice"
        self.aval[v] = value
        self.alevel[v] = self.level
        self.apos[v] = len(self.entries)
        self.arith_order.append(v)
        self.entries.append(("a", v))

    def backjump(self, target: int) -> List[Tuple[str, int]]:
        """Undo every entry above ``target``; returns the removed entries, latest first."""
        if target >= self.level:
            return []
        cut = self.lims[target]
        popped = []
        while len(self.entries) > cut:
            kind, x = self.entries.pop()
            popped.append((kind, x))
            if kind == "b":
                self.bval[x] = None
                self.breason[x] = None
            else:
                del self.aval[x]
                del self.alevel[x]
                del self.apos[x]
                self.arith_order.pop()
        del self.lims[target:]
        return popped

    def decision_at(self, level: int) -> Tuple[str, int]:
        """The entry opening ``level`` (1-based)."""
        return self.entries[self.lims[level - 1]]
