from __future__ import annotations

import math
import random

import pytest

from rtplan.budget import Budget
from rtplan.heuristics import Heuristic
from rtplan.mhsp import (ExpandedTwice, MhspTree, SearchNode, UnvisitedChild, init_tree,
                         mean_select, ucb_select)
from rtplan.oracle import optimal_length

INF = math.inf


def attach(parent, R, V=1, action=None, is_goal=False):
    node = SearchNode(frozenset(), R, parent, action, is_goal)
    node.V = V
    parent.children.append(node)
    return node


def blank_tree(task, seed=0):
    return MhspTree(task, lambda s: 0, seed=seed)


# --- initialisation and selection ----------------------------------------

def test_init_tree_gripper5(gripper):
    t = gripper(5)
    tree = init_tree(t, Heuristic(t))
    assert tree.root.R == -2
    assert tree.root.V == 1
    assert tree.root.children == []
    assert tree.best_solution is None


def test_init_tree_at_goal(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), root_state=gripper2.goal)
    assert tree.root.R == 0
    assert tree.root.is_goal


def test_init_tree_dead_end(corridor):
    trap = corridor.state(["(at trap)", "(link start mid)", "(link mid end)", "(link start trap)"])
    tree = MhspTree(corridor, Heuristic(corridor), root_state=trap)
    assert tree.root.R == -INF


def test_fresh_tree_selects_root(gripper2):
    tree = blank_tree(gripper2)
    assert tree.select_leaf() is tree.root


def test_select_descends_through_best_mean(gripper2):
    tree = blank_tree(gripper2)
    root = tree.root
    root.V = 4
    good = attach(root, R=-4.0, V=2)
    attach(root, R=-5.0, V=1)
    leaf = attach(good, R=-3.0)
    assert tree.select_leaf() is leaf


def test_select_three_levels(gripper2):
    tree = blank_tree(gripper2, seed=7)
    root = tree.root
    root.V = 6
    a = attach(root, R=-6.0, V=3)   # mean -2
    attach(root, R=-5.0, V=2)       # mean -2.5
    attach(a, R=-3.0, V=1)          # mean -3
    a2 = attach(a, R=-2.0, V=2)     # mean -1
    a21 = attach(a2, R=-1.0, V=1)
    attach(a2, R=-4.0, V=1)
    assert tree.select_leaf() is a21


def test_select_stops_at_goal_node(gripper2):
    tree = blank_tree(gripper2)
    tree.root.V = 5
    goal = attach(tree.root, R=-1.0, V=4, is_goal=True)
    attach(tree.root, R=-9.0)
    assert tree.select_leaf() is goal


def test_select_ties_follow_the_seed(gripper2):
    picks = set()
    for seed in range(20):
        tree = blank_tree(gripper2, seed)
        tree.root.V = 3
        a = attach(tree.root, R=-1.0)
        b = attach(tree.root, R=-1.0)
        first = tree.select_leaf()
        again = blank_tree(gripper2, seed)
        again.root.V = 3
        attach(again.root, R=-1.0)
        attach(again.root, R=-1.0)
        assert again.root.children.index(again.select_leaf()) == [a, b].index(first)
        picks.add(first is a)
    assert picks == {True, False}


@pytest.mark.parametrize("R,V,expected", [(-3, 1, -2), (-10, 4, -1.5), (0, 1, 1)])
def test_default_reward(gripper2, R, V, expected):
    tree = blank_tree(gripper2)
    tree.root.R, tree.root.V = R, V
    assert tree.default_reward() == expected


# --- expansion -----------------------------------------------------------

def test_expand_gripper2_root(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), seed=3)
    chosen, reward = tree.expand(tree.root)
    kids = tree.root.children
    assert len(kids) == 5
    assert sorted(str(k.action) for k in kids) == [
        "(move rooma roomb)", "(pick ball1 rooma left)", "(pick ball1 rooma right)",
        "(pick ball2 rooma left)", "(pick ball2 rooma right)"]
    assert all(k.V == 1 for k in kids)
    by_action = {str(k.action): k.R for k in kids}
    assert by_action["(move rooma roomb)"] == -3
    assert by_action["(pick ball1 rooma left)"] == -2
    assert chosen.action.name == "pick"
    assert reward == -2
    assert tree.size == 6


def test_expand_picks_the_largest_return(gripper2):
    # estimates 2 for states after picking ball2, 4 for everything else
    values = {gripper2.s0: 4}
    for a, s2 in gripper2.successors(gripper2.s0):
        values[s2] = 2 if a.name == "pick" and a.args[0] == "ball2" else 4
    tree = MhspTree(gripper2, values.__getitem__)
    chosen, reward = tree.expand(tree.root)
    assert sorted(ch.R for ch in tree.root.children) == [-4, -4, -4, -2, -2]
    assert reward == -2
    assert chosen.action.args[0] == "ball2"


def test_expand_twice_raises(gripper2):
    tree = blank_tree(gripper2)
    tree.expand(tree.root)
    with pytest.raises(ExpandedTwice):
        tree.expand(tree.root)


def test_expand_dead_end_uses_default_reward(corridor):
    trap = corridor.state(["(at trap)", "(link start mid)", "(link mid end)", "(link start trap)"])
    tree = MhspTree(corridor, lambda s: 1)
    node = attach(tree.root, R=-1.0)
    node.state = trap
    tree.root.V = 2
    chosen, reward = tree.expand(node)
    assert chosen is None
    assert reward == tree.default_reward() == 0.5


def test_expand_all_children_infinite_falls_back(corridor):
    trap_fact = corridor.fact_id("(at trap)")
    mid_fact = corridor.fact_id("(at mid)")

    def estimate(s):
        return INF if trap_fact in s or mid_fact in s else 1

    tree = MhspTree(corridor, estimate)
    chosen, reward = tree.expand(tree.root)
    assert chosen.R == -INF
    assert reward == tree.default_reward()
    tree.backpropagate(chosen, reward)
    assert math.isfinite(tree.root.R)


# --- backpropagation -----------------------------------------------------

def test_backprop_from_child_of_root(gripper2):
    tree = blank_tree(gripper2)
    tree.root.R = -2
    child = attach(tree.root, R=-2.0)
    tree.backpropagate(child, -2)
    assert (tree.root.R, tree.root.V) == (-4, 2)
    assert (child.R, child.V) == (-2.0, 1)


def test_backprop_depth_three(gripper2):
    tree = blank_tree(gripper2)
    root = tree.root
    root.R = -3.0
    a = attach(root, R=-2.0)
    b = attach(a, R=-1.0)
    c = attach(b, R=0.0, is_goal=True)
    tree.backpropagate(c, 0)
    assert (b.R, b.V) == (-1.0, 2)
    assert (a.R, a.V) == (-3.0, 2)
    assert (root.R, root.V) == (-5.0, 2)
    assert (c.R, c.V) == (0.0, 1)


def test_backprop_from_root_is_a_no_op(gripper2):
    tree = blank_tree(gripper2)
    tree.backpropagate(tree.root, -7)
    assert (tree.root.R, tree.root.V) == (0, 1)


# --- plans ---------------------------------------------------------------

def test_solution_plan_is_the_parent_chain(gripper2):
    t = gripper2
    tree = blank_tree(t)
    names = ["(pick ball1 rooma left)", "(move rooma roomb)", "(drop ball1 roomb left)"]
    node = tree.root
    for name in names:
        node = attach(node, R=0.0, action=t.action(name))
    assert tree.reconstruct_solution_plan(node).names() == names
    assert tree.reconstruct_solution_plan(tree.root).names() == []


def test_best_plan_follows_visits(gripper2):
    t = gripper2
    tree = blank_tree(t)
    assert len(tree.reconstruct_best_plan()) == 0
    tree.root.V = 8
    attach(tree.root, R=-2.0, V=2, action=t.action("(move rooma roomb)"))
    busy = attach(tree.root, R=-20.0, V=5, action=t.action("(pick ball1 rooma left)"))
    attach(busy, R=-1.0, V=1, action=t.action("(pick ball2 rooma right)"))
    attach(busy, R=-3.0, V=1, action=t.action("(move rooma roomb)"))
    assert tree.reconstruct_best_plan().names() == ["(pick ball1 rooma left)",
                                                    "(pick ball2 rooma right)"]


def test_run_goal_at_root(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), root_state=gripper2.goal)
    assert len(tree.run(Budget.iters(10))) == 0
    assert tree.iterations == 0


def test_run_generous_budget_is_optimal(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), seed=1)
    plan = tree.run(Budget.iters(20_000))
    assert len(plan) == 5
    assert gripper2.is_goal(gripper2.run(plan))


def test_run_tiny_budget_returns_partial_plan(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), seed=1)
    plan = tree.run(Budget.iters(1))
    assert tree.best_solution is None
    assert len(plan) == 1
    assert plan.actions[0].name == "pick"


def test_run_on_corridor_avoids_trap(corridor):
    tree = MhspTree(corridor, Heuristic(corridor), seed=0)
    plan = tree.run(Budget.iters(50))
    assert plan.names() == ["(go start mid)", "(go mid end)"]


def test_ucb_mode_solves_gripper2(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), seed=0, ucb_c=1.0)
    plan = tree.run(Budget.iters(5_000))
    assert gripper2.is_goal(gripper2.run(plan))


# --- invariants ----------------------------------------------------------

@pytest.mark.parametrize("n,heuristic", [(2, "hmax"), (3, "hmax"), (3, "hadd")])
def test_conservation_shape_and_anytime(gripper, n, heuristic):
    task = gripper(n)
    tree = MhspTree(task, Heuristic(task, heuristic), seed=11)
    incumbent = INF
    for k in range(3000):
        expected_default = tree.root.R / tree.root.V + 1
        rec = tree.iterate()
        assert rec.default_reward == expected_default
        if rec.kind == "dead-end":
            assert rec.reward == expected_default
        assert tree.root.V == 1 + tree.iterations == k + 2
        if tree.best_solution is not None:
            assert len(tree.best_solution) <= incumbent
            incumbent = len(tree.best_solution)
    count = 0
    for node in tree.nodes():
        count += 1
        assert node.V >= 1
        assert math.isfinite(node.R)
        assert node.mean <= 0
        for ch in node.children:
            assert ch.parent is node
            assert ch.depth == node.depth + 1
    assert count == tree.size
    assert incumbent >= optimal_length(task)


def test_same_seed_same_tree(gripper):
    task = gripper(3)
    dumps = []
    for _ in range(2):
        tree = MhspTree(task, Heuristic(task), seed=5)
        tree.run(Budget.iters(400))
        dumps.append(tree.dump(max_depth=50))
    assert dumps[0] == dumps[1]


def test_golden_gripper2_100_iterations(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), seed=0)
    tree.run(Budget.iters(100))
    assert tree.iterations == 100
    assert tree.root.V == 101
    assert (tree.size, tree.expansions) == GOLDEN_SIZE
    assert tree.result().names() == GOLDEN_PLAN


GOLDEN_SIZE = (59, 18)
GOLDEN_PLAN = ["(pick ball1 rooma left)", "(pick ball2 rooma right)", "(move rooma roomb)",
               "(drop ball2 roomb right)", "(drop ball1 roomb left)"]


def test_dump_format(gripper2):
    tree = MhspTree(gripper2, Heuristic(gripper2), seed=0)
    tree.iterate()
    lines = tree.dump(max_depth=1).splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("<root> state=")
    assert lines[0].endswith("R=-4 V=2 mean=-2 children=5")
    assert all(line.startswith("  (") for line in lines[1:])
    assert tree.dump(max_depth=0).count("\n") == 0


# --- UCB -----------------------------------------------------------------

def test_ucb_example(gripper2):
    tree = blank_tree(gripper2)
    root = tree.root
    root.V = 11
    attach(root, R=-20.0, V=10)
    second = attach(root, R=-3.0, V=1)
    rng = random.Random(0)
    assert ucb_select(root, 2.0, rng) is second
    assert ucb_select(root, 0.0, rng) is root.children[0]


def test_ucb_single_child(gripper2):
    tree = blank_tree(gripper2)
    only = attach(tree.root, R=-5.0)
    assert ucb_select(tree.root, 3.0, random.Random(0)) is only


def test_ucb_unvisited_child(gripper2):
    tree = blank_tree(gripper2)
    tree.root.V = 2
    attach(tree.root, R=-1.0)
    attach(tree.root, R=0.0, V=0)
    with pytest.raises(UnvisitedChild):
        ucb_select(tree.root, 1.0, random.Random(0))


def test_ucb_zero_matches_mean_select(gripper2):
    rng = random.Random(42)
    tree = blank_tree(gripper2)
    for trial in range(200):
        tree.root.children = []
        tree.root.V = rng.randint(2, 50)
        for _ in range(rng.randint(1, 6)):
            attach(tree.root, R=float(rng.randint(-10, 0)), V=rng.randint(1, 5))
        a = mean_select(tree.root, random.Random(trial))
        b = ucb_select(tree.root, 0.0, random.Random(trial))
        assert a is b
