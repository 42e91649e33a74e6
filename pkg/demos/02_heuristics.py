"""Compare the two delete-relaxation estimates with true goal distances.

h_max never overestimates; h_add is usually closer but can overshoot.

Run: python demos/02_heuristics.py
"""
from __future__ import annotations

from collections import Counter

from rtplan.bench.generators import generate_ferry, generate_gripper
from rtplan.heuristics import build_rpg, h_add, h_max
from rtplan.oracle import goal_distances
from rtplan.pddl import load_task


def summarize(name, task):
    dist = goal_distances(task)
    over_add = sum(h_add(task, s) > d for s, d in dist.items())
    over_max = sum(h_max(task, s) > d for s, d in dist.items())
    gap = Counter(d - h_max(task, s) for s, d in dist.items())
    print(f"{name}: {len(dist)} states, optimum {dist[task.s0]}, "
          f"h_max(s0)={h_max(task, task.s0)}, h_add(s0)={h_add(task, task.s0)}")
    print(f"  states where h_max overestimates: {over_max}; where h_add does: {over_add}")
    print(f"  distribution of (true distance - h_max): {dict(sorted(gap.items()))}")


def main():
    task = load_task(*generate_gripper(2))
    rpg = build_rpg(task, task.s0)
    print("relaxed planning graph levels from gripper(2) s0:")
    for f, lv in sorted(rpg.fact_levels.items(), key=lambda p: (p[1], p[0])):
        print(f"  level {lv}: {task.facts[f]}")
    print()
    summarize("gripper(3)", load_task(*generate_gripper(3)))
    summarize("gripper(5)", load_task(*generate_gripper(5)))
    summarize("ferry(3)", load_task(*generate_ferry(3)))


if __name__ == "__main__":
    main()
