"""The three experiment protocols, producing CSV-ready rows.

* Test 1: repeated episodes per (algorithm, decision budget), no learning.
* Test 2: the same with learning, plus one row per episode for convergence curves.
* Test 3: one decision from s0 per budget in a sweep, scoring the returned
  (partial) plan by its distance to the goal and to the optimum.
"""
from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..agent import AgentConfig, default_max_steps, run_trials
from ..budget import Budget
from ..heuristics import Heuristic, LearnedTable
from ..oracle import DistanceOracle, ResourceLimit, optimal_length
from ..pddl import load_task, load_task_files
from ..pddl.task import GroundTask
from ..selectors import ALGORITHMS, make_selector
from .generators import generate

TRIAL_COLUMNS = ["problem", "algo", "decision", "unit", "episodes", "avg_time", "avg_length",
                 "opt_length", "max_length", "min_length", "failure_pct", "avg_decisions"]
EPISODE_COLUMNS = ["problem", "algo", "decision", "unit", "episode", "success", "plan_length",
                   "min_so_far", "table_size"]
SWEEP_COLUMNS = ["problem", "algo", "decision", "unit", "plan_length", "reached_goal",
                 "goal_distance", "optimum_distance"]
SUMMARY_COLUMNS = ["problem", "algo", "unit", "time_to_optimal"]


@dataclass
class ExperimentSpec:
    test: int = 1
    generator: str | None = None
    domain_file: str | None = None
    problem_file: str | None = None
    algorithms: tuple[str, ...] = ALGORITHMS
    budgets: tuple[Budget, ...] = (Budget(iterations=100),)
    episodes: int = 50
    learning: bool = False
    max_steps: int | None = None
    seed: int = 0
    heuristic: str = "hmax"
    commit_policy: str = "first-action"
    ucb_c: float | None = None
    astar_timeout_rule: str = "last"
    jobs: int = 1
    _task: GroundTask | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        has_files = self.domain_file is not None or self.problem_file is not None
        if has_files == (self.generator is not None):
            raise ValueError("give either a generator or a domain/problem file pair")
        if has_files and (self.domain_file is None or self.problem_file is None):
            raise ValueError("both domain and problem files are needed")
        if self.test not in (1, 2, 3):
            raise ValueError("test must be 1, 2 or 3")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        if not self.budgets:
            raise ValueError("at least one decision budget is needed")
        keys = [_budget_value(b) for b in self.budgets]
        if any(b >= c for b, c in zip(keys, keys[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if len({_unit(b) for b in self.budgets}) != 1:
            raise ValueError("a sweep must use a single unit")

    @property
    def problem(self) -> str:
        if self.generator is not None:
            return self.generator.replace(":", "-")
        return Path(self.problem_file).stem

    def task(self) -> GroundTask:
        if self._task is None:
            if self.generator is not None:
                self._task = load_task(*generate(self.generator))
            else:
                self._task = load_task_files(self.domain_file, self.problem_file)
        return self._task

    def agent_config(self, algo: str, budget: Budget, seed: int) -> AgentConfig:
        return AgentConfig(selector=algo, decision=budget, episodes=self.episodes,
                           max_steps=self.max_steps, learning=self.learning, seed=seed,
                           commit_policy=self.commit_policy, heuristic=self.heuristic,
                           ucb_c=self.ucb_c, astar_timeout_rule=self.astar_timeout_rule)


def _unit(b: Budget) -> str:
    return "iters" if b.deterministic else "ms"


def _budget_value(b: Budget) -> float:
    return b.iterations if b.deterministic else b.seconds * 1000.0


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        if x.is_integer():
            return str(int(x))
        return f"{x:.4f}".rstrip("0").rstrip(".")
    return str(x)


def cell_seed(seed: int, index: int) -> int:
    """Seed of one experiment cell; independent of how cells are scheduled."""
    return seed * 10_007 + index


def _oracle_optimum(task: GroundTask) -> float | None:
    try:
        return optimal_length(task)
    except ResourceLimit:
        return None


def _trial_cell(args):
    spec, algo, budget, seed, max_steps = args
    task = spec.task()
    cfg = replace(spec.agent_config(algo, budget, seed), max_steps=max_steps)
    series = []

    def record(k, result, table):
        series.append((k, result.success, result.plan_length, len(table)))

    rec = run_trials(task, cfg, on_episode=record)
    return rec, series


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(fn, items))


def _run_trials_protocol(spec: ExperimentSpec):
    task = spec.task()
    opt = _oracle_optimum(task)
    max_steps = spec.max_steps or default_max_steps(task)
    cells = [(algo, budget) for algo in spec.algorithms for budget in spec.budgets]
    args = [(spec, algo, budget, cell_seed(spec.seed, i), max_steps)
            for i, (algo, budget) in enumerate(cells)]
    outcomes = _map(_trial_cell, args, spec.jobs)
    rows, episode_rows = [], []
    for (algo, budget), (rec, series) in zip(cells, outcomes):
        base = {"problem": spec.problem, "algo": algo, "decision": _budget_value(budget),
                "unit": _unit(budget)}
        rows.append({
            **base,
            "episodes": len(rec.episodes),
            # wall-clock figures would break byte-identical reruns in iteration mode
            "avg_time": None if budget.deterministic else rec.avg_time,
            "avg_length": rec.avg_length,
            "opt_length": opt,
            "max_length": rec.max_length,
            "min_length": rec.min_length,
            "failure_pct": rec.failure_pct,
            "avg_decisions": rec.avg_steps,
        })
        best = math.inf
        for k, success, length, table_size in series:
            if success:
                best = min(best, length)
            episode_rows.append({**base, "episode": k, "success": success, "plan_length": length,
                                 "min_so_far": best, "table_size": table_size})
    return rows, episode_rows


def run_test1(spec: ExperimentSpec) -> list[dict]:
    rows, _ = _run_trials_protocol(replace(spec, learning=False))
    return rows


def run_test2(spec: ExperimentSpec) -> tuple[list[dict], list[dict]]:
    return _run_trials_protocol(replace(spec, learning=True))


def sweep_selector(task: GroundTask, algo: str, budgets, seed: int, heuristic: str = "hmax",
                   oracle: DistanceOracle | None = None, ucb_c: float | None = None,
                   astar_timeout_rule: str = "last") -> list[dict]:
    """One decision from s0 per budget; every budget reuses the same seed."""
    oracle = oracle or DistanceOracle(task)
    estimate = LearnedTable(Heuristic(task, heuristic)).effective
    selector = make_selector(algo, ucb_c, astar_timeout_rule)
    out = []
    for budget in budgets:
        result = selector(task, task.s0, budget, estimate, random.Random(seed))
        report = oracle.report(result.plan)
        out.append({"algo": algo, "decision": _budget_value(budget), "unit": _unit(budget),
                    "plan_length": len(result.plan), "reached_goal": result.reached_goal,
                    "goal_distance": report.goal_distance,
                    "optimum_distance": report.optimum_distance})
    return out


def time_to_optimal(rows: list[dict]) -> float:
    """Smallest budget from which both distances stay at zero for the rest of the sweep."""
    best = math.inf
    for row in reversed(rows):
        if row["goal_distance"] == 0 and row["optimum_distance"] == 0:
            best = row["decision"]
        else:
            break
    return best


def run_test3(spec: ExperimentSpec) -> tuple[list[dict], list[dict]]:
    task = spec.task()
    oracle = DistanceOracle(task)
    rows, summary = [], []
    for i, algo in enumerate(spec.algorithms):
        sweep = sweep_selector(task, algo, spec.budgets, cell_seed(spec.seed, i), spec.heuristic,
                               oracle, spec.ucb_c, spec.astar_timeout_rule)
        rows.extend({"problem": spec.problem, **r} for r in sweep)
        summary.append({"problem": spec.problem, "algo": algo, "unit": _unit(spec.budgets[0]),
                        "time_to_optimal": time_to_optimal(sweep)})
    return rows, summary


def write_csv(rows: list[dict], columns: list[str], out=None) -> str:
    """Render rows with a fixed column order; write to ``out`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text


def run_experiment(spec: ExperimentSpec, out: str | None = None) -> dict[str, str]:
    """Run ``spec.test`` and return ``{name: csv_text}``, writing files next to ``out``."""
    def sibling(suffix):
        if out is None:
            return None
        p = Path(out)
        return p.with_name(f"{p.stem}_{suffix}{p.suffix or '.csv'}")

    if spec.test == 1:
        return {"trials": write_csv(run_test1(spec), TRIAL_COLUMNS, out)}
    if spec.test == 2:
        rows, episodes = run_test2(spec)
        return {"trials": write_csv(rows, TRIAL_COLUMNS, out),
                "episodes": write_csv(episodes, EPISODE_COLUMNS, sibling("episodes"))}
    rows, summary = run_test3(spec)
    return {"sweep": write_csv(rows, SWEEP_COLUMNS, out),
            "summary": write_csv(summary, SUMMARY_COLUMNS, sibling("summary"))}
