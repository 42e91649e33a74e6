"""Real-time episodic agent: decide under a budget, act, repeat, optionally learn."""
from __future__ import annotations

import logging
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable

from .budget import Budget
from .heuristics import Heuristic, LearnedTable, learn_update
from .oracle import ResourceLimit, optimal_length
from .pddl.task import GroundAction, GroundTask, State, apply
from .selectors import Selector, make_selector

log = logging.getLogger(__name__)

COMMIT_POLICIES = ("first-action", "full-plan")
FALLBACK_MAX_STEPS = 1000


@dataclass
class AgentConfig:
    selector: str = "mhsp"
    decision: Budget = Budget(iterations=100)
    episodes: int = 1
    max_steps: int | None = None
    learning: bool = False
    seed: int = 0
    commit_policy: str = "first-action"
    heuristic: str = "hmax"
    ucb_c: float | None = None
    astar_timeout_rule: str = "last"

    def __post_init__(self):
        if self.commit_policy not in COMMIT_POLICIES:
            raise ValueError(f"commit_policy must be one of {COMMIT_POLICIES}")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be positive")
        if self.episodes < 1:
            raise ValueError("episodes must be positive")


@dataclass
class EpisodeResult:
    plan_length: int
    wall_time: float
    success: bool
    steps_taken: int
    states: list[State] = field(default_factory=list, repr=False)
    actions: list[GroundAction] = field(default_factory=list, repr=False)


@dataclass
class TrialRecord:
    episodes: list[EpisodeResult]
    table: LearnedTable | None = field(default=None, repr=False)

    @property
    def lengths(self) -> list[int]:
        return [e.plan_length for e in self.episodes if e.success]

    @property
    def failures(self) -> int:
        return sum(not e.success for e in self.episodes)

    @property
    def failure_pct(self) -> float:
        return 100.0 * self.failures / len(self.episodes)

    @property
    def avg_length(self) -> float | None:
        return statistics.fmean(self.lengths) if self.lengths else None

    @property
    def min_length(self) -> int | None:
        return min(self.lengths, default=None)

    @property
    def max_length(self) -> int | None:
        return max(self.lengths, default=None)

    @property
    def avg_time(self) -> float:
        return statistics.fmean(e.wall_time for e in self.episodes)

    @property
    def avg_steps(self) -> float:
        return statistics.fmean(e.steps_taken for e in self.episodes)

    def min_so_far(self) -> list[float]:
        out, best = [], float("inf")
        for e in self.episodes:
            if e.success:
                best = min(best, e.plan_length)
            out.append(best)
        return out


def default_max_steps(task: GroundTask, node_cap: int = 200_000) -> int:
    """Ten times the optimal plan length, or 1000 if the oracle gives up."""
    try:
        opt = optimal_length(task, node_cap=node_cap)
    except ResourceLimit:
        return FALLBACK_MAX_STEPS
    if opt == float("inf") or opt == 0:
        return FALLBACK_MAX_STEPS
    return int(10 * opt)


def episode_rng(seed: int, episode: int) -> random.Random:
    return random.Random(seed * 1_000_003 + episode)


def run_episode(task: GroundTask, cfg: AgentConfig, table: LearnedTable,
                rng: random.Random | None = None, selector: Selector | None = None,
                max_steps: int | None = None) -> EpisodeResult:
    """Run one episode from s0 until the goal or the step cap.

    ``table`` supplies the estimates the selector sees; it is read here and
    only modified by :func:`apply_learning`.
    """
    rng = rng or random.Random(cfg.seed)
    selector = selector or make_selector(cfg.selector, cfg.ucb_c, cfg.astar_timeout_rule)
    if max_steps is None:
        max_steps = cfg.max_steps or default_max_steps(task)
    t0 = time.perf_counter()
    s = task.s0
    states = [s]
    actions: list[GroundAction] = []
    decisions = 0
    success = task.goal <= s
    while not success and len(actions) < max_steps:
        result = selector(task, s, cfg.decision, table.effective, rng)
        decisions += 1
        if not result.plan:
            log.debug("selector returned no action at step %d", len(actions))
            break
        commit = result.plan.actions[:1] if cfg.commit_policy == "first-action" \
            else result.plan.actions
        for a in commit:
            s = apply(s, a)
            states.append(s)
            actions.append(a)
            if task.goal <= s:
                success = True
                break
            if len(actions) >= max_steps:
                break
    return EpisodeResult(plan_length=len(actions), wall_time=time.perf_counter() - t0,
                         success=success, steps_taken=decisions, states=states, actions=actions)


def apply_learning(task: GroundTask, table: LearnedTable, visited: list[State]) -> int:
    """One backward sweep of ``H(s) <- max(H(s), 1 + min H(succ))`` over visited states.

    Goal states are skipped. Successor values are recomputed on the spot
    from the table, so updates made later in the trajectory flow backwards
    within the same sweep. Returns the number of changed entries.
    """
    changed = 0
    for s in reversed(visited):
        if task.goal <= s:
            continue
        children = [table.effective(s2) for _, s2 in task.successors(s)]
        changed += learn_update(table, s, children)
    return changed


def run_trials(task: GroundTask, cfg: AgentConfig, selector: Selector | None = None,
               on_episode: Callable[[int, EpisodeResult, LearnedTable], None] | None = None,
               table: LearnedTable | None = None) -> TrialRecord:
    """Run ``cfg.episodes`` episodes that share one learned table."""
    if table is None:
        table = LearnedTable(Heuristic(task, cfg.heuristic))
    selector = selector or make_selector(cfg.selector, cfg.ucb_c, cfg.astar_timeout_rule)
    max_steps = cfg.max_steps or default_max_steps(task)
    episodes = []
    for k in range(cfg.episodes):
        result = run_episode(task, cfg, table, episode_rng(cfg.seed, k), selector, max_steps)
        if cfg.learning:
            apply_learning(task, table, result.states)
        episodes.append(result)
        if on_episode is not None:
            on_episode(k, result, table)
    return TrialRecord(episodes, table)
