"""Branching order: activities and an indexed heap over decision variables.

Decision variables are pure boolean variables and arithmetic variables,
encoded as heap items ``2 * id`` and ``2 * id + 1`` respectively.  The
heuristic only changes the sort key.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

RESCALE_LIMIT = 1e100


def bool_item(b: int) -> int:
    return 2 * b


def arith_item(v: int) -> int:
    return 2 * v + 1


class IndexedHeap:
    """Binary min-heap of ints with a key function and membership index."""

    def __init__(self, key: Callable[[int], tuple]):
        self.key = key
        self.heap: List[int] = []
        self.pos: Dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.heap)

    def __contains__(self, item: int) -> bool:
        return item in self.pos

    def _less(self, a: int, b: int) -> bool:
        return self.key(a) < self.key(b)

    def _up(self, i: int) -> None:
        h = self.heap
        item = h[i]
        while i > 0:
            parent = (i - 1) >> 1
            if not self._less(item, h[parent]):
                break
            h[i] = h[parent]
            self.pos[h[i]] = i
            i = parent
        h[i] = item
        self.pos[item] = i

    def _down(self, i: int) -> None:
        h = self.heap
        n = len(h)
        item = h[i]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            if child + 1 < n and self._less(h[child + 1], h[child]):
                child += 1
            if not self._less(h[child], item):
                break
            h[i] = h[child]
            self.pos[h[i]] = i
            i = child
        h[i] = item
        self.pos[item] = i

    def insert(self, item: int) -> None:
        if item in self.pos:
            return
        self.heap.append(item)
        self._up(len(self.heap) - 1)

    def update(self, item: int) -> None:
        """Restore heap order after the key of ``item`` decreased or increased."""
        i = self.pos.get(item)
        if i is None:
            return
        self._up(i)
        self._down(self.pos[item])

    def top(self) -> Optional[int]:
        return self.heap[0] if self.heap else None

    def pop(self) -> int:
        h = self.heap
        item = h[0]
        last = h.pop()
        del self.pos[item]
        if h:
            h[0] = last
            self.pos[last] = 0
            self._down(0)
        return item

    def rebuild(self, items: Sequence[int]) -> None:
        self.heap = []
        self.pos = {}
        for it in items:
            self.insert(it)


class VarOrder:
    """Activities of boolean and arithmetic variables plus the decision heap."""

    def __init__(self, heuristic: str, bool_vars: Sequence[int], num_arith: int,
                 max_degree: Sequence[int], bool_bump: float = 1.0, arith_bump: float = 1.0,
                 bool_decay: float = 0.95, arith_decay: float = 0.95):
        self.heuristic = heuristic
        self.bool_act: Dict[int, float] = {b: 0.0 for b in bool_vars}
        self.arith_act: List[float] = [0.0] * num_arith
        self.max_degree = list(max_degree)
        self.bool_inc = float(bool_bump)
        self.arith_inc = float(arith_bump)
        self.bool_decay = bool_decay
        self.arith_decay = arith_decay
        self.heap = IndexedHeap(self._key)
        self.heap.rebuild([bool_item(b) for b in bool_vars] + [arith_item(v) for v in range(num_arith)])

    def _key(self, item: int) -> tuple:
        is_arith = item & 1
        vid = item >> 1
        h = self.heuristic
        if h == "default":
            if is_arith:
                return (1, -self.max_degree[vid], vid)
            return (0, 0, vid)
        act = self.arith_act[vid] if is_arith else self.bool_act[vid]
        if h == "bool_vsids":
            return (is_arith, -act, vid)
        if h == "theory_vsids":
            return (1 - is_arith, -act, vid)
        # uniform: one activity order, booleans win cross-type ties
        return (-act, is_arith, vid)

    # -- activities ----------------------------------------------------
    def bump_bool(self, b: int) -> None:
        if b not in self.bool_act:
            return
        self.bool_act[b] += self.bool_inc
        if self.bool_act[b] > RESCALE_LIMIT:
            for k in self.bool_act:
                self.bool_act[k] *= 1e-100
            self.bool_inc *= 1e-100
        self.heap.update(bool_item(b))

    def bump_arith(self, v: int) -> None:
        self.arith_act[v] += self.arith_inc
        if self.arith_act[v] > RESCALE_LIMIT:
            self.arith_act = [a * 1e-100 for a in self.arith_act]
            self.arith_inc *= 1e-100
        self.heap.update(arith_item(v))

    def decay(self) -> None:
        self.bool_inc /= self.bool_decay
        self.arith_inc /= self.arith_decay

    # -- heap ----------------------------------------------------------
    def reinsert_bool(self, b: int) -> None:
        if b in self.bool_act:
            self.heap.insert(bool_item(b))

    def reinsert_arith(self, v: int) -> None:
        self.heap.insert(arith_item(v))

    def snapshot(self) -> tuple:
        """Activities and increments, for restart-preservation checks."""
        return (dict(self.bool_act), list(self.arith_act), self.bool_inc, self.arith_inc)
