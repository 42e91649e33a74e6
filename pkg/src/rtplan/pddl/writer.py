"""Pretty-printer producing PDDL text that :mod:`parser` reads back unchanged."""
from __future__ import annotations

from .syntax import ROOT_TYPE, DomainDef, ProblemDef


def _typed(items, typed: bool) -> str:
    if not typed:
        return " ".join(n for n, _ in items)
    out = []
    i = 0
    while i < len(items):
        t = items[i][1]
        group = []
        while i < len(items) and items[i][1] == t:
            group.append(items[i][0])
            i += 1
        out.append(" ".join(group) + f" - {t}")
    return " ".join(out)


def _conj(atoms, negated=()) -> str:
    parts = [str(a) for a in atoms] + [f"(not {a})" for a in negated]
    if len(parts) == 1:
        return parts[0]
    return "(and " + " ".join(parts) + ")"


def domain_to_pddl(dom: DomainDef) -> str:
    typed = dom.typed
    lines = [f"(define (domain {dom.name})"]
    if dom.requirements:
        lines.append(f"  (:requirements {' '.join(dom.requirements)})")
    if dom.types:
        lines.append(f"  (:types {_typed(dom.types, True)})")
    if dom.constants:
        lines.append(f"  (:constants {_typed(dom.constants, typed)})")
    if dom.predicates:
        lines.append("  (:predicates")
        for p in dom.predicates:
            params = _typed(p.params, typed)
            lines.append(f"    ({p.name}{' ' + params if params else ''})")
        lines.append("  )")
    for op in dom.operators:
        lines.append(f"  (:action {op.name}")
        lines.append(f"    :parameters ({_typed(op.params, typed)})")
        if op.precond:
            lines.append(f"    :precondition {_conj(op.precond)}")
        lines.append(f"    :effect {_conj(op.add, op.delete) if op.add or op.delete else '(and)'})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def problem_to_pddl(prob: ProblemDef) -> str:
    typed = any(t != ROOT_TYPE for _, t in prob.objects)
    lines = [f"(define (problem {prob.name})", f"  (:domain {prob.domain_name})"]
    lines.append(f"  (:objects {_typed(prob.objects, typed)})")
    lines.append("  (:init")
    lines.extend(f"    {a}" for a in prob.init)
    lines.append("  )")
    lines.append(f"  (:goal {_conj(prob.goal) if prob.goal else '(and)'})")
    lines.append(")")
    return "\n".join(lines) + "\n"
