"""Delete-relaxation distance estimates and the learned overlay table.

Estimates are action counts: ``0`` exactly at goal states and ``math.inf``
when the goal is unreachable even with deletes ignored.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .pddl.task import GroundTask, State

INF = math.inf

Estimator = Callable[[State], float]


class _Index:
    """Per-task precomputation shared by every relaxed evaluation."""

    def __init__(self, task: GroundTask):
        n = len(task.actions)
        self.pre_count = [len(a.pre) for a in task.actions]
        self.adds = [tuple(a.add) for a in task.actions]
        self.free = [i for i in range(n) if not task.actions[i].pre]
        needs: dict[int, list[int]] = {}
        for a in task.actions:
            for f in a.pre:
                needs.setdefault(f, []).append(a.index)
        self.needs = needs
        self.pres = [tuple(a.pre) for a in task.actions]


_INDEX_ATTR = "_relaxation_index"


def _index(task: GroundTask) -> _Index:
    idx = getattr(task, _INDEX_ATTR, None)
    if idx is None:
        idx = _Index(task)
        setattr(task, _INDEX_ATTR, idx)
    return idx


@dataclass
class RelaxedPlanningGraph:
    fact_levels: dict[int, int]
    action_levels: dict[int, int]

    def level(self, fact: int) -> float:
        return self.fact_levels.get(fact, INF)

    @property
    def depth(self) -> int:
        return max(self.fact_levels.values(), default=0)


def build_rpg(task: GroundTask, s: State, stop_at: Iterable[int] | None = None
              ) -> RelaxedPlanningGraph:
    """Layered delete-free forward chaining from ``s`` until fixpoint.

    If ``stop_at`` is given, construction stops as soon as all of those
    facts have a level.
    """
    idx = _index(task)
    missing = list(idx.pre_count)
    fact_levels = {f: 0 for f in s}
    action_levels: dict[int, int] = {}
    pending = set(stop_at) - s if stop_at is not None else None
    new_facts = list(s)
    ready = list(idx.free)
    level = 0
    while new_facts or ready:
        if pending is not None and not pending:
            break
        for f in new_facts:
            for a in idx.needs.get(f, ()):
                missing[a] -= 1
                if missing[a] == 0:
                    ready.append(a)
        new_facts = []
        for a in ready:
            action_levels[a] = level
            for f in idx.adds[a]:
                if f not in fact_levels:
                    fact_levels[f] = level + 1
                    new_facts.append(f)
                    if pending is not None:
                        pending.discard(f)
        ready = []
        level += 1
    return RelaxedPlanningGraph(fact_levels, action_levels)


def h_max(task: GroundTask, s: State, g: State | None = None) -> float:
    g = task.goal if g is None else g
    if g <= s:
        return 0
    levels = build_rpg(task, s, stop_at=g).fact_levels
    worst = 0
    for f in g:
        lv = levels.get(f)
        if lv is None:
            return INF
        worst = max(worst, lv)
    return worst


def h_add(task: GroundTask, s: State, g: State | None = None) -> float:
    """Additive relaxed cost: sum over goal facts of their cheapest relaxed cost."""
    g = task.goal if g is None else g
    if g <= s:
        return 0
    idx = _index(task)
    missing = list(idx.pre_count)
    pre_sum = [0] * len(missing)
    cost: dict[int, int] = {}
    heap = [(0, f) for f in s]
    for a in idx.free:
        for f in idx.adds[a]:
            heap.append((1, f))
    heapq.heapify(heap)
    remaining = set(g)
    while heap and remaining:
        c, f = heapq.heappop(heap)
        if f in cost:
            continue
        cost[f] = c
        remaining.discard(f)
        for a in idx.needs.get(f, ()):
            missing[a] -= 1
            pre_sum[a] += c
            if missing[a] == 0:
                ac = pre_sum[a] + 1
                for q in idx.adds[a]:
                    if q not in cost:
                        heapq.heappush(heap, (ac, q))
    if remaining:
        return INF
    return sum(cost[f] for f in g)


BASE_HEURISTICS = {"hmax": h_max, "hadd": h_add}


class Heuristic:
    """A base estimator bound to one task, with an optional memo cache.

    The cache is keyed by state, so it cannot change any returned value.
    """

    def __init__(self, task: GroundTask, kind: str = "hmax", cache: bool = True):
        if kind not in BASE_HEURISTICS:
            raise ValueError(f"unknown heuristic {kind!r}; choose from {sorted(BASE_HEURISTICS)}")
        self.task = task
        self.kind = kind
        self._fn = BASE_HEURISTICS[kind]
        self._cache: dict[State, float] | None = {} if cache else None
        self.evaluations = 0

    def __call__(self, s: State) -> float:
        if self._cache is not None:
            v = self._cache.get(s)
            if v is not None:
                return v
        self.evaluations += 1
        v = self._fn(self.task, s, self.task.goal)
        if self._cache is not None:
            self._cache[s] = v
        return v


class LearnedTable:
    """Learned lower bounds ``H(s)`` overlaid on a base estimator.

    Stored values only ever grow; states without an entry fall back to the
    base estimate.
    """

    def __init__(self, base: Estimator | None = None):
        self.base = base
        self.entries: dict[State, float] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, s: State) -> bool:
        return s in self.entries

    def get(self, s: State, default=None):
        return self.entries.get(s, default)

    def base_value(self, s: State) -> float:
        return self.base(s) if self.base is not None else 0

    def effective(self, s: State) -> float:
        b = self.base_value(s)
        v = self.entries.get(s)
        return b if v is None or v < b else v

    __call__ = effective

    def raise_to(self, s: State, value: float) -> bool:
        if value > self.effective(s):
            self.entries[s] = value
            return True
        return False

    def snapshot(self) -> dict[State, float]:
        return dict(self.entries)

    def dump(self, path) -> None:
        """Write ``state-hash value`` lines, sorted for stable output."""
        rows = sorted((_state_key(s), v) for s, v in self.entries.items())
        with open(path, "w") as fh:
            for key, v in rows:
                fh.write(f"{key} {v}\n")


def _state_key(s: State) -> str:
    return "-".join(map(str, sorted(s))) or "empty"


def delta(task: GroundTask, s: State, g: State | None = None,
          table: LearnedTable | None = None, base: Callable = h_max) -> float:
    """Initial return of a node: minus the effective distance estimate."""
    h = base(task, s, g)
    if table is not None:
        learned = table.get(s)
        if learned is not None and learned > h:
            h = learned
    return -h


def learn_update(table: LearnedTable, s: State, children_h: list[float]) -> bool:
    """``H(s) <- max(H(s), 1 + min(children))``; returns True if H(s) changed.

    A state without successors is a dead end and is raised to infinity.
    """
    target = 1 + min(children_h) if children_h else INF
    return table.raise_to(s, target)
