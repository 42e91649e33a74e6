"""Exact optimal plan lengths, used as ground truth for evaluation and tests."""
from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass

from .heuristics import h_max
from .pddl.task import GroundTask, Plan, State

INF = math.inf
DEFAULT_NODE_CAP = 10**6


class ResourceLimit(RuntimeError):
    pass


def _bfs(task: GroundTask, start: State, node_cap: int) -> float:
    if task.goal <= start:
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        s, d = frontier.popleft()
        for _, s2 in task.successors(s):
            if s2 in seen:
                continue
            if task.goal <= s2:
                return d + 1
            seen.add(s2)
            if len(seen) > node_cap:
                raise ResourceLimit(f"more than {node_cap} states")
            frontier.append((s2, d + 1))
    return INF


def _astar(task: GroundTask, start: State, node_cap: int) -> float:
    h0 = h_max(task, start)
    if h0 == INF:
        return INF
    tie = itertools.count()
    best_g = {start: 0}
    heap = [(h0, next(tie), 0, start)]
    while heap:
        _, _, g, s = heapq.heappop(heap)
        if g > best_g[s]:
            continue
        if task.goal <= s:
            return g
        for _, s2 in task.successors(s):
            g2 = g + 1
            if g2 < best_g.get(s2, INF):
                h = h_max(task, s2)
                if h == INF:
                    continue
                best_g[s2] = g2
                if len(best_g) > node_cap:
                    raise ResourceLimit(f"more than {node_cap} states")
                heapq.heappush(heap, (g2 + h, next(tie), g2, s2))
    return INF


def optimal_length(task: GroundTask, start: State | None = None, method: str = "bfs",
                   node_cap: int = DEFAULT_NODE_CAP) -> float:
    """Length of a shortest plan from ``start`` (default: s0), or ``inf``.

    ``method`` is ``"bfs"`` (blind breadth-first) or ``"astar"`` (A* with
    h_max); both are exact for unit-cost actions.
    """
    start = task.s0 if start is None else start
    if method == "bfs":
        return _bfs(task, start, node_cap)
    if method == "astar":
        return _astar(task, start, node_cap)
    raise ValueError(f"unknown method {method!r}")


def reachable_states(task: GroundTask, start: State | None = None,
                     node_cap: int = DEFAULT_NODE_CAP) -> set[State]:
    start = task.s0 if start is None else start
    seen = {start}
    frontier = [start]
    while frontier:
        s = frontier.pop()
        for _, s2 in task.successors(s):
            if s2 not in seen:
                seen.add(s2)
                if len(seen) > node_cap:
                    raise ResourceLimit(f"more than {node_cap} states")
                frontier.append(s2)
    return seen


def goal_distances(task: GroundTask, node_cap: int = DEFAULT_NODE_CAP) -> dict[State, float]:
    """Exact goal distance of every state reachable from s0.

    One forward sweep builds the reachable graph, then a backward
    breadth-first pass from the goal states labels it.
    """
    states = reachable_states(task, node_cap=node_cap)
    preds: dict[State, list[State]] = {s: [] for s in states}
    for s in states:
        for _, s2 in task.successors(s):
            preds[s2].append(s)
    dist = {s: 0 for s in states if task.goal <= s}
    frontier = deque(dist)
    while frontier:
        s = frontier.popleft()
        for p in preds[s]:
            if p not in dist:
                dist[p] = dist[s] + 1
                frontier.append(p)
    return {s: dist.get(s, INF) for s in states}


class DistanceOracle:
    """Memoised optimal distances for one task."""

    def __init__(self, task: GroundTask, method: str = "bfs", node_cap: int = DEFAULT_NODE_CAP):
        self.task = task
        self.method = method
        self.node_cap = node_cap
        self._memo: dict[State, float] = {}

    def distance(self, s: State) -> float:
        d = self._memo.get(s)
        if d is None:
            d = self._memo[s] = optimal_length(self.task, s, self.method, self.node_cap)
        return d

    @property
    def optimum(self) -> float:
        return self.distance(self.task.s0)

    def report(self, partial: Plan) -> "DistanceReport":
        end = self.task.run(partial)
        gd = self.distance(end)
        od = len(partial) + gd - self.optimum if gd != INF else INF
        return DistanceReport(goal_distance=gd, optimum_distance=od, partial_length=len(partial))


@dataclass(frozen=True)
class DistanceReport:
    goal_distance: float
    optimum_distance: float
    partial_length: int


def goal_distance(task: GroundTask, partial: Plan, **kw) -> float:
    """Optimal remaining length from the end state of ``partial``."""
    return optimal_length(task, task.run(partial), **kw)


def optimum_distance(task: GroundTask, partial: Plan, **kw) -> float:
    """``len(partial) + goal_distance(partial) - optimal_length(s0)``."""
    gd = goal_distance(task, partial, **kw)
    if gd == INF:
        return INF
    return len(partial) + gd - optimal_length(task, **kw)
