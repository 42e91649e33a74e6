"""Real-time classical planning with mean-based heuristic search (MHSP).

The package grounds STRIPS tasks from PDDL, runs MHSP and two baseline
selectors (anytime A*, breadth-first lookahead) under per-decision budgets,
and drives them from an episodic agent that can learn heuristic values.
"""
from .agent import AgentConfig, EpisodeResult, TrialRecord, apply_learning, run_episode, run_trials
from .baselines import SelectorResult, astar_select, bfs_select
from .budget import Budget
from .heuristics import Heuristic, LearnedTable, build_rpg, delta, h_add, h_max, learn_update
from .mhsp import MhspTree, SearchNode, init_tree, ucb_select
from .oracle import DistanceOracle, goal_distance, optimal_length, optimum_distance
from .pddl import GroundTask, Plan, load_task, load_task_files
from .selectors import make_selector, mhsp_select

__version__ = "0.1.0"
