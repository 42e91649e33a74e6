"""Parse a PDDL domain, ground a problem, and step through a plan by hand.

Run: python demos/01_parse_and_ground.py
"""
from __future__ import annotations

from rtplan import data
from rtplan.bench.generators import generate_gripper
from rtplan.oracle import optimal_length, reachable_states
from rtplan.pddl import (count_substitutions, load_task, parse_domain, parse_problem,
                         UnsupportedFeature)


def main():
    # The bundled IPC gripper files are untyped; the generator writes a typed variant.
    ipc = load_task(data.read("gripper-domain.pddl"), data.read("gripper-prob01.pddl"))
    print(f"IPC gripper prob01: {len(ipc.facts)} facts, {len(ipc.actions)} ground actions, "
          f"optimal plan length {optimal_length(ipc)}")

    dtext, ptext = generate_gripper(2)
    dom = parse_domain(dtext)
    prob = parse_problem(ptext, dom)
    print(f"\ntyped gripper(2) bindings per operator: {count_substitutions(dom, prob)}")

    task = load_task(dtext, ptext)
    print("initial state:", " ".join(map(str, task.atoms(task.s0))))
    print("goal:         ", " ".join(map(str, task.atoms(task.goal))))
    print("applicable at s0:", ", ".join(str(a) for a in task.applicable_actions(task.s0)))

    plan = ["(pick ball1 rooma left)", "(pick ball2 rooma right)", "(move rooma roomb)",
            "(drop ball1 roomb left)", "(drop ball2 roomb right)"]
    s = task.s0
    for text in plan:
        a = task.action(text)
        s = task.run([a], s)
        print(f"  {text:28s} -> goal reached: {task.is_goal(s)}")
    print(f"\n{len(reachable_states(task))} states are reachable in gripper(2)")

    try:
        parse_domain(dtext.replace(":typing", ":adl"), filename="gripper-adl.pddl")
    except UnsupportedFeature as exc:
        print(f"\nrejected as expected: {exc}")


if __name__ == "__main__":
    main()
