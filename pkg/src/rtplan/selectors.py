"""Uniform ``select(task, state, budget, estimate, rng)`` entry points."""
from __future__ import annotations

import random
import time
from typing import Callable, Protocol

from .baselines import SelectorResult, astar_select, bfs_select
from .budget import Budget
from .mhsp import MhspTree
from .pddl.task import GroundTask, State


class Selector(Protocol):
    def __call__(self, task: GroundTask, s: State, budget: Budget,
                 estimate: Callable[[State], float], rng: random.Random) -> SelectorResult: ...


def mhsp_select(task: GroundTask, s: State, budget: Budget, estimate: Callable[[State], float],
                rng: random.Random, ucb_c: float | None = None) -> SelectorResult:
    t0 = time.perf_counter()
    tree = MhspTree(task, estimate, root_state=s, seed=rng.getrandbits(64), ucb_c=ucb_c)
    plan = tree.run(budget)
    return SelectorResult(plan, tree.expansions, time.perf_counter() - t0,
                          tree.best_solution is not None)


def make_selector(name: str, ucb_c: float | None = None, astar_timeout_rule: str = "last"
                  ) -> Selector:
    if name == "mhsp":
        return lambda task, s, budget, est, rng: mhsp_select(task, s, budget, est, rng, ucb_c)
    if name == "astar":
        return lambda task, s, budget, est, rng: astar_select(task, s, budget, est, rng,
                                                              astar_timeout_rule)
    if name == "bfs":
        return bfs_select
    raise ValueError(f"unknown selector {name!r}; choose mhsp, astar or bfs")


ALGORITHMS = ("mhsp", "astar", "bfs")
