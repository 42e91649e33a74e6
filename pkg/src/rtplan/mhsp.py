"""Mean-based heuristic search (MHSP).

A UCT-style tree search for deterministic planning. Random rollouts are
replaced by a heuristic call, node values start at minus the estimated goal
distance (optimistic when the estimate is admissible), and selection is a
plain argmax over mean returns, with no exploration bonus needed. Returns
are penalised by one per level as they are propagated upwards, so shorter
paths to the same estimate score better.
"""
from __future__ import annotations

import math
import random
from typing import Callable, NamedTuple

from .budget import Budget
from .pddl.task import GroundAction, GroundTask, Plan, State

NEG_INF = -math.inf


class ExpandedTwice(RuntimeError):
    pass


class UnvisitedChild(ValueError):
    pass


class SearchNode:
    __slots__ = ("state", "parent", "action", "children", "R", "V", "depth", "is_goal")

    def __init__(self, state: State, R: float, parent: SearchNode | None = None,
                 action: GroundAction | None = None, is_goal: bool = False):
        self.state = state
        self.parent = parent
        self.action = action
        self.children: list[SearchNode] = []
        self.R = R
        self.V = 1
        self.depth = 0 if parent is None else parent.depth + 1
        self.is_goal = is_goal

    @property
    def mean(self) -> float:
        return self.R / self.V

    def path(self) -> list[GroundAction]:
        actions = []
        node = self
        while node.parent is not None:
            actions.append(node.action)
            node = node.parent
        actions.reverse()
        return actions

    def __repr__(self) -> str:
        return f"SearchNode(depth={self.depth}, R={self.R}, V={self.V}, children={len(self.children)})"


class IterationRecord(NamedTuple):
    kind: str  # "goal", "expand" or "dead-end"
    leaf: SearchNode
    start: SearchNode
    reward: float
    default_reward: float


def _argmax(nodes, key, rng: random.Random):
    best = []
    best_v = None
    for n in nodes:
        v = key(n)
        if best_v is None or v > best_v:
            best_v = v
            best = [n]
        elif v == best_v:
            best.append(n)
    if len(best) == 1:
        return best[0]
    return rng.choice(best)


def _mean(n: SearchNode) -> float:
    return n.R / n.V


def _ret(n: SearchNode) -> float:
    return n.R


def mean_select(node: SearchNode, rng: random.Random) -> SearchNode:
    return _argmax(node.children, _mean, rng)


def ucb_select(node: SearchNode, c: float, rng: random.Random) -> SearchNode:
    """UCB1 child choice: ``mean + c * sqrt(ln(parent visits) / child visits)``."""
    if not node.children:
        raise ValueError("node has no children")
    if any(ch.V <= 0 for ch in node.children):
        raise UnvisitedChild("every child needs at least one visit")
    log_p = math.log(node.V)

    def score(ch):
        return ch.R / ch.V + c * math.sqrt(log_p / ch.V)

    return _argmax(node.children, score, rng)


class MhspTree:
    """Search tree rooted at ``root_state`` (the task's initial state by default).

    ``estimate`` maps a state to a non-negative distance estimate; node
    returns are initialised to its negation. Duplicate states reached along
    different paths are kept as separate nodes.
    """

    def __init__(self, task: GroundTask, estimate: Callable[[State], float],
                 root_state: State | None = None, seed: int = 0, ucb_c: float | None = None):
        self.task = task
        self.estimate = estimate
        self.seed = seed
        self.rng = random.Random(seed)
        self.ucb_c = ucb_c
        state = task.s0 if root_state is None else root_state
        self.root = SearchNode(state, self.delta(state), is_goal=task.goal <= state)
        self.best_solution: Plan | None = None
        self.iterations = 0
        self.expansions = 0
        self.size = 1

    def delta(self, s: State) -> float:
        return -self.estimate(s)

    def _child(self, node: SearchNode) -> SearchNode:
        if self.ucb_c is None:
            return _argmax(node.children, _mean, self.rng)
        return ucb_select(node, self.ucb_c, self.rng)

    def select_leaf(self) -> SearchNode:
        node = self.root
        while not node.is_goal and node.V != 1:
            node = self._child(node)
        return node

    def default_reward(self) -> float:
        return self.root.R / self.root.V + 1

    def expand(self, leaf: SearchNode) -> tuple[SearchNode | None, float]:
        """Create one child per applicable action; pick the best-valued one.

        Returns ``(chosen, reward)``. Without applicable actions the chosen
        node is ``None`` and the reward is the pessimistic default.
        """
        if leaf.children:
            raise ExpandedTwice(repr(leaf))
        goal = self.task.goal
        for a, s2 in self.task.successors(leaf.state):
            leaf.children.append(SearchNode(s2, self.delta(s2), leaf, a, goal <= s2))
        self.expansions += 1
        self.size += len(leaf.children)
        if not leaf.children:
            return None, self.default_reward()
        chosen = _argmax(leaf.children, _ret, self.rng)
        reward = chosen.R
        if reward == NEG_INF:
            # every child is a dead end; keep ancestors' returns finite
            reward = self.default_reward()
        return chosen, reward

    def backpropagate(self, start: SearchNode, reward: float) -> None:
        """Add ``reward - i`` to the i-th proper ancestor of ``start`` (i from 0)."""
        i = 0
        node = start.parent
        while node is not None:
            node.R += reward - i
            node.V += 1
            i += 1
            node = node.parent

    def iterate(self) -> IterationRecord:
        leaf = self.select_leaf()
        default = self.default_reward()
        reward = default
        start = leaf
        if leaf.is_goal:
            kind = "goal"
            reward = 0
        else:
            chosen, reward = self.expand(leaf)
            if chosen is None:
                kind = "dead-end"
            else:
                kind = "expand"
                start = chosen
        self.backpropagate(start, reward)
        self.iterations += 1
        if leaf.is_goal and (self.best_solution is None or leaf.depth < len(self.best_solution)):
            self.best_solution = self.reconstruct_solution_plan(leaf)
        return IterationRecord(kind, leaf, start, reward, default)

    def run(self, budget: Budget) -> Plan:
        """Iterate until the budget runs out; return the best plan known.

        That is the shortest solution found so far or, failing one, the
        most-visited partial plan.
        """
        if self.root.is_goal:
            self.best_solution = Plan()
            return self.best_solution
        clock = budget.start()
        while clock.tick():
            self.iterate()
        return self.result()

    def result(self) -> Plan:
        if self.best_solution is not None:
            return self.best_solution
        return self.reconstruct_best_plan()

    def reconstruct_solution_plan(self, goal_node: SearchNode) -> Plan:
        return Plan(tuple(goal_node.path()))

    def reconstruct_best_plan(self) -> Plan:
        """Follow the most visited child (then best mean, then random) to a leaf."""
        node = self.root
        actions = []
        while node.children:
            best_v = max(ch.V for ch in node.children)
            candidates = [ch for ch in node.children if ch.V == best_v]
            best_m = max(ch.R / ch.V for ch in candidates)
            candidates = [ch for ch in candidates if ch.R / ch.V == best_m]
            node = candidates[0] if len(candidates) == 1 else self.rng.choice(candidates)
            actions.append(node.action)
            if node.V == 1:
                break
        return Plan(tuple(actions))

    def nodes(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    def dump(self, max_depth: int = 3) -> str:
        """One line per node: indent, action, state hash, R, V, mean, #children."""
        lines = []
        stack = [self.root]
        while stack:
            n = stack.pop()
            label = str(n.action) if n.action is not None else "<root>"
            lines.append(f"{'  ' * n.depth}{label} state={_state_hash(n.state)} R={n.R:g} "
                         f"V={n.V} mean={n.mean:.4g} children={len(n.children)}")
            if n.depth < max_depth:
                stack.extend(reversed(n.children))
        return "\n".join(lines)


def _state_hash(s: State) -> str:
    return format(hash(tuple(sorted(s))) & 0xFFFFFFFF, "08x")


def init_tree(task: GroundTask, estimate: Callable[[State], float], seed: int = 0,
              root_state: State | None = None, ucb_c: float | None = None) -> MhspTree:
    return MhspTree(task, estimate, root_state=root_state, seed=seed, ucb_c=ucb_c)
