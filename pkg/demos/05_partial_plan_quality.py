"""Score the first decision of each selector across a range of budgets.

Goal distance is the optimal remaining length after the returned partial
plan; optimum distance is how much longer than optimal the plan is bound
to be. Both reach zero once a selector returns an optimal solution.

Run: python demos/05_partial_plan_quality.py
"""
from __future__ import annotations

from rtplan.bench.experiments import sweep_selector, time_to_optimal
from rtplan.bench.generators import generate_gripper
from rtplan.budget import Budget
from rtplan.oracle import DistanceOracle
from rtplan.pddl import load_task


def main():
    for n in (3, 5):
        task = load_task(*generate_gripper(n))
        oracle = DistanceOracle(task)
        budgets = [Budget.iters(b) for b in (10, 30, 100, 300, 1000, 3000, 10000)]
        print(f"gripper({n}), optimum {oracle.optimum}")
        print(f"  {'budget':>7s}  " + "  ".join(f"{a:>9s}" for a in ("mhsp", "astar", "bfs")))
        sweeps = {a: sweep_selector(task, a, budgets, seed=0, oracle=oracle)
                  for a in ("mhsp", "astar", "bfs")}
        for i, b in enumerate(budgets):
            cells = [f"{sweeps[a][i]['goal_distance']:>4g}/{sweeps[a][i]['optimum_distance']:<4g}"
                     for a in sweeps]
            print(f"  {b.iterations:>7d}  " + "  ".join(cells))
        print("  smallest budget with an optimal plan:",
              {a: time_to_optimal(rows) for a, rows in sweeps.items()})
        print()


if __name__ == "__main__":
    main()
