"""PDDL (STRIPS + typing) parsing and grounding."""
from .errors import (ArityMismatch, NotApplicable, PddlError, PddlSyntaxError, UndeclaredSymbol,
                     UnsupportedFeature)
from .grounding import count_substitutions, ground, relaxed_reachable
from .parser import parse_domain, parse_domain_file, parse_problem, parse_problem_file
from .syntax import Atom, DomainDef, OperatorSchema, Predicate, ProblemDef
from .task import (GroundAction, GroundTask, Plan, State, applicable, apply, apply_unchecked,
                   is_goal)
from .writer import domain_to_pddl, problem_to_pddl


def load_task(domain_text: str, problem_text: str, prune: bool = True) -> GroundTask:
    dom = parse_domain(domain_text)
    return ground(dom, parse_problem(problem_text, dom), prune=prune)


def load_task_files(domain_path, problem_path, prune: bool = True) -> GroundTask:
    dom = parse_domain_file(domain_path)
    return ground(dom, parse_problem_file(problem_path, dom), prune=prune)


__all__ = [
    "ArityMismatch", "Atom", "DomainDef", "GroundAction", "GroundTask", "NotApplicable",
    "OperatorSchema", "PddlError", "PddlSyntaxError", "Plan", "Predicate", "ProblemDef", "State",
    "UndeclaredSymbol", "UnsupportedFeature", "applicable", "apply", "apply_unchecked",
    "count_substitutions", "domain_to_pddl", "ground", "is_goal", "load_task", "load_task_files",
    "parse_domain", "parse_domain_file", "parse_problem", "parse_problem_file",
    "problem_to_pddl", "relaxed_reachable",
]
