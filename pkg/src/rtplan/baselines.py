"""Anytime A* and breadth-first lookahead action selectors.

Both keep a closed set keyed by state and stop when a goal node is
expanded or the budget runs out. What they return on timeout differs:

* A* returns the path to the node it expanded last, which is the classic
  real-time reading of "current best plan". ``timeout_rule="min_f"`` switches
  to the best open node instead.
* BFS returns the path to the frontier node with the lowest heuristic
  estimate, preferring shallower nodes on ties.
"""
from __future__ import annotations

import heapq
import itertools
import math
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable

from .budget import Budget
from .pddl.task import GroundAction, GroundTask, Plan, State

INF = math.inf


@dataclass
class SelectorResult:
    plan: Plan
    nodes_expanded: int
    time_used: float
    reached_goal: bool


class _Node:
    __slots__ = ("state", "g", "parent", "action")

    def __init__(self, state, g, parent=None, action=None):
        self.state = state
        self.g = g
        self.parent = parent
        self.action = action

    def plan(self) -> Plan:
        actions: list[GroundAction] = []
        n = self
        while n.parent is not None:
            actions.append(n.action)
            n = n.parent
        actions.reverse()
        return Plan(tuple(actions))


def astar_select(task: GroundTask, s: State, budget: Budget, estimate: Callable[[State], float],
                 rng: random.Random | None = None, timeout_rule: str = "last") -> SelectorResult:
    """Best-first search on ``f = depth + estimate`` from ``s``.

    Ties on ``f`` are broken by a seeded random key. When only the start
    node was expanded before time ran out, the ``"last"`` rule has nothing
    to offer and the best open node is used instead.
    """
    if timeout_rule not in ("last", "min_f"):
        raise ValueError(f"unknown timeout rule {timeout_rule!r}")
    rng = rng or random.Random(0)
    t0 = time.perf_counter()
    goal = task.goal
    root = _Node(s, 0)
    if goal <= s:
        return SelectorResult(Plan(), 0, time.perf_counter() - t0, True)
    best_g = {s: 0}
    counter = itertools.count()
    heap = [(estimate(s), rng.random(), next(counter), root)]
    clock = budget.start()
    last = None
    expanded = 0
    while heap:
        if not clock.tick():
            break
        # skip stale entries without charging them to the budget
        while heap and heap[0][3].g > best_g[heap[0][3].state]:
            heapq.heappop(heap)
        if not heap:
            break
        f, _, _, node = heapq.heappop(heap)
        if goal <= node.state:
            return SelectorResult(node.plan(), expanded, time.perf_counter() - t0, True)
        expanded += 1
        last = node
        for a, s2 in task.successors(node.state):
            g2 = node.g + 1
            if g2 < best_g.get(s2, INF):
                h = estimate(s2)
                if h == INF:
                    continue
                best_g[s2] = g2
                heapq.heappush(heap, (g2 + h, rng.random(), next(counter), _Node(s2, g2, node, a)))

    open_best = None
    while heap:
        cand = heap[0][3]
        if cand.g > best_g[cand.state]:
            heapq.heappop(heap)
            continue
        open_best = cand
        break
    if timeout_rule == "min_f" or last is None or last is root:
        target = open_best if open_best is not None else last
    else:
        target = last
    plan = target.plan() if target is not None else Plan()
    return SelectorResult(plan, expanded, time.perf_counter() - t0, False)


def bfs_select(task: GroundTask, s: State, budget: Budget, estimate: Callable[[State], float],
               rng: random.Random | None = None) -> SelectorResult:
    """Breadth-first lookahead from ``s`` with duplicate detection."""
    rng = rng or random.Random(0)
    t0 = time.perf_counter()
    goal = task.goal
    if goal <= s:
        return SelectorResult(Plan(), 0, time.perf_counter() - t0, True)
    root = _Node(s, 0)
    seen = {s}
    queue = deque([root])
    clock = budget.start()
    expanded = 0
    while queue:
        if not clock.tick():
            break
        node = queue.popleft()
        if goal <= node.state:
            return SelectorResult(node.plan(), expanded, time.perf_counter() - t0, True)
        expanded += 1
        succ = list(task.successors(node.state))
        rng.shuffle(succ)
        for a, s2 in succ:
            if s2 not in seen:
                seen.add(s2)
                queue.append(_Node(s2, node.g + 1, node, a))

    if not queue:
        return SelectorResult(Plan(), expanded, time.perf_counter() - t0, False)
    best_key = None
    best: list[_Node] = []
    for n in queue:
        key = (estimate(n.state), n.g)
        if best_key is None or key < best_key:
            best_key, best = key, [n]
        elif key == best_key:
            best.append(n)
    target = best[0] if len(best) == 1 else rng.choice(best)
    return SelectorResult(target.plan(), expanded, time.perf_counter() - t0, False)
