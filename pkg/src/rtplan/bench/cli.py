"""Command-line experiment runner.

Examples::

    rtplan-bench --gen gripper:5 --test 1 --decision-iters 200 --episodes 50 --out t1.csv
    rtplan-bench --domain d.pddl --problem p.pddl --algo mhsp --decision-ms 40 --test 2
    rtplan-bench --gen gripper:5 --test 3 --unit iters --sweep 50,100,200,400,800
"""
from __future__ import annotations

import argparse
import logging
import sys

from ..budget import Budget
from ..pddl.errors import PddlError
from ..selectors import ALGORITHMS
from .experiments import ExperimentSpec, run_experiment


def _budgets(args) -> tuple[Budget, ...]:
    if args.sweep:
        values = [float(v) for v in args.sweep.split(",") if v.strip()]
        if args.unit == "iters":
            return tuple(Budget.iters(int(v)) for v in values)
        return tuple(Budget.ms(v) for v in values)
    if args.decision_iters is not None:
        return (Budget.iters(args.decision_iters),)
    if args.decision_ms is not None:
        return (Budget.ms(args.decision_ms),)
    return (Budget.iters(100),)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rtplan-bench",
                                description="Real-time planning experiments (MHSP, A*, BFS).")
    src = p.add_argument_group("problem")
    src.add_argument("--domain", help="PDDL domain file")
    src.add_argument("--problem", help="PDDL problem file")
    src.add_argument("--gen", metavar="NAME:N", help="generated instance, gripper:N or ferry:N")
    p.add_argument("--algo", default="all",
                   help="comma-separated subset of mhsp,astar,bfs (default: all)")
    dec = p.add_mutually_exclusive_group()
    dec.add_argument("--decision-ms", type=float, help="wall-clock budget per decision")
    dec.add_argument("--decision-iters", type=int,
                     help="deterministic budget: MHSP iterations or A*/BFS expansions")
    dec.add_argument("--sweep", help="comma-separated increasing budgets (see --unit)")
    p.add_argument("--unit", choices=("ms", "iters"), default="ms", help="unit of --sweep values")
    p.add_argument("--episodes", type=int, default=50)
    p.add_argument("--learning", action="store_true", help="learn H on visited states (test 1)")
    p.add_argument("--max-steps", type=int, help="step cap per episode (default 10x optimum)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--ucb", type=float, metavar="C", help="use UCB selection in MHSP with constant C")
    p.add_argument("--heuristic", choices=("hmax", "hadd"), default="hmax")
    p.add_argument("--commit", choices=("first-action", "full-plan"), default="first-action")
    p.add_argument("--astar-timeout", choices=("last", "min_f"), default="last")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent cells")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    algos = ALGORITHMS if args.algo == "all" else tuple(a.strip() for a in args.algo.split(","))
    try:
        spec = ExperimentSpec(
            test=args.test, generator=args.gen, domain_file=args.domain,
            problem_file=args.problem, algorithms=algos, budgets=_budgets(args),
            episodes=args.episodes, learning=args.learning, max_steps=args.max_steps,
            seed=args.seed, heuristic=args.heuristic, commit_policy=args.commit,
            ucb_c=args.ucb, astar_timeout_rule=args.astar_timeout, jobs=args.jobs)
        spec.task()
    except PddlError as exc:
        print(f"{exc.location()}: error: {exc.message}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"rtplan-bench: error: {exc}", file=sys.stderr)
        return 2

    outputs = run_experiment(spec, args.out)
    if args.out is None:
        for i, text in enumerate(outputs.values()):
            if i:
                sys.stdout.write("\n")
            sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
