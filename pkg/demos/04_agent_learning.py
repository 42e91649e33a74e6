"""Run repeated real-time episodes with and without learning.

Run: python demos/04_agent_learning.py
"""
from __future__ import annotations

from rtplan.agent import AgentConfig, run_trials
from rtplan.bench.generators import generate_gripper
from rtplan.budget import Budget
from rtplan.pddl import load_task


def main():
    task = load_task(*generate_gripper(3))
    for algo in ("mhsp", "astar", "bfs"):
        for learning in (False, True):
            cfg = AgentConfig(selector=algo, decision=Budget.iters(60), episodes=15,
                              learning=learning, seed=1)
            rec = run_trials(task, cfg)
            avg = f"{rec.avg_length:.1f}" if rec.avg_length is not None else "-"
            print(f"{algo:5s} learning={learning!s:5s} lengths {[e.plan_length for e in rec.episodes]}")
            print(f"      avg {avg}, best {rec.min_length}, failures {rec.failure_pct:.0f}%, "
                  f"learned entries {len(rec.table)}")


if __name__ == "__main__":
    main()
