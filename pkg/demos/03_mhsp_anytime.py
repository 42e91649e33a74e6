"""Watch one MHSP search improve its plan as iterations accumulate.

Run: python demos/03_mhsp_anytime.py
"""
from __future__ import annotations

from rtplan.bench.generators import generate_gripper
from rtplan.heuristics import Heuristic
from rtplan.mhsp import MhspTree
from rtplan.oracle import optimal_length
from rtplan.pddl import load_task


def main():
    for heuristic in ("hmax", "hadd"):
        task = load_task(*generate_gripper(3))
        tree = MhspTree(task, Heuristic(task, heuristic), seed=0)
        print(f"gripper(3), optimum {optimal_length(task)}, estimate {heuristic}")
        best = None
        for _ in range(30_000):
            tree.iterate()
            if tree.best_solution is not None and len(tree.best_solution) != best:
                best = len(tree.best_solution)
                print(f"  iteration {tree.iterations:6d}: plan of length {best} "
                      f"({tree.size} nodes)")
        print("  top of the tree:")
        print("\n".join("    " + line for line in tree.dump(max_depth=1).splitlines()))
        print()

    # with no time to reach a goal, the most visited branch is returned
    task = load_task(*generate_gripper(5))
    tree = MhspTree(task, Heuristic(task), seed=0)
    for _ in range(200):
        tree.iterate()
    print("gripper(5) after 200 iterations, partial plan:", tree.result().names())


if __name__ == "__main__":
    main()
