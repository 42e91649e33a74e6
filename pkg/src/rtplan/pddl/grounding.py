"""Instantiate operator schemas over the problem objects."""
from __future__ import annotations

from itertools import product

from .syntax import Atom, DomainDef, OperatorSchema, ProblemDef
from .task import GroundAction, GroundTask


def _substitute(atoms, binding) -> list[Atom]:
    return [Atom(a.predicate, tuple(binding.get(x, x) for x in a.args)) for a in atoms]


def _objects_by_type(dom: DomainDef, prob: ProblemDef) -> dict[str, list[str]]:
    typed = list(dom.constants) + [o for o in prob.objects if o[0] not in dict(dom.constants)]
    types = {t for _, t in typed} | {t for t, _ in dom.types} | {p for _, p in dom.types}
    out = {}
    for t in types:
        out[t] = [o for o, ot in typed if dom.is_subtype(ot, t)]
    return out


def _static_predicates(dom: DomainDef) -> set[str]:
    changed = {a.predicate for op in dom.operators for a in op.add + op.delete}
    return {p.name for p in dom.predicates} - changed


def ground_operator(op: OperatorSchema, objects: dict[str, list[str]], static: set[str],
                    init: set[Atom]):
    """Yield (args, pre, add, delete) for every consistent binding of ``op``.

    Bindings falsifying a static precondition are dropped, as are bindings
    where an atom is both added and deleted (e.g. ``move ?x ?x``).
    """
    names = [v for v, _ in op.params]
    domains = [objects.get(t, []) for _, t in op.params]
    static_pre = [a for a in op.precond if a.predicate in static]
    for combo in product(*domains):
        binding = dict(zip(names, combo))
        if any(g not in init for g in _substitute(static_pre, binding)):
            continue
        add = _substitute(op.add, binding)
        delete = _substitute(op.delete, binding)
        if set(add) & set(delete):
            continue
        yield combo, _substitute(op.precond, binding), add, delete


def relaxed_reachable(s0: frozenset, actions) -> set[int]:
    """Facts reachable from ``s0`` when delete effects are ignored."""
    reached = set(s0)
    waiting = {}
    missing = []
    queue = list(reached)
    ready = []
    for i, a in enumerate(actions):
        missing.append(len(a.pre))
        if not a.pre:
            ready.append(i)
        for f in a.pre:
            waiting.setdefault(f, []).append(i)
    while queue or ready:
        while ready:
            for f in actions[ready.pop()].add:
                if f not in reached:
                    reached.add(f)
                    queue.append(f)
        if queue:
            f = queue.pop()
            for i in waiting.get(f, ()):
                missing[i] -= 1
                if missing[i] == 0:
                    ready.append(i)
    return reached


def ground(dom: DomainDef, prob: ProblemDef, prune: bool = True) -> GroundTask:
    """Ground ``dom``/``prob`` into an indexed :class:`GroundTask`.

    Fact ids are dense and handed out in first-seen order: initial state,
    then action atoms in grounding order, then any leftover goal atoms.
    With ``prune`` set, actions whose preconditions are not relaxed-reachable
    from the initial state are removed; they could never fire anyway.
    """
    facts: list[Atom] = []
    index: dict[Atom, int] = {}

    def intern(atom: Atom) -> int:
        i = index.get(atom)
        if i is None:
            i = index[atom] = len(facts)
            facts.append(atom)
        return i

    for a in prob.init:
        intern(a)
    s0 = frozenset(index[a] for a in prob.init)

    init = set(prob.init)
    objects = _objects_by_type(dom, prob)
    static = _static_predicates(dom)
    raw = []
    for op in dom.operators:
        for args, pre, add, delete in ground_operator(op, objects, static, init):
            raw.append((op.name, args, pre, add, delete))

    candidates = [
        GroundAction(0, name, tuple(args), frozenset(map(intern, pre)),
                     frozenset(map(intern, add)), frozenset(map(intern, delete)))
        for name, args, pre, add, delete in raw
    ]
    goal = frozenset(intern(a) for a in prob.goal)

    if prune:
        reach = relaxed_reachable(s0, candidates)
        candidates = [a for a in candidates if a.pre <= reach]

    actions = [GroundAction(i, a.name, a.args, a.pre, a.add, a.delete)
               for i, a in enumerate(candidates)]
    return GroundTask(facts=facts, actions=actions, s0=s0, goal=goal, name=prob.name,
                      fact_index=index)


def count_substitutions(dom: DomainDef, prob: ProblemDef) -> dict[str, int]:
    """Number of consistent bindings per operator, before reachability pruning."""
    objects = _objects_by_type(dom, prob)
    static = _static_predicates(dom)
    init = set(prob.init)
    return {op.name: sum(1 for _ in ground_operator(op, objects, static, init))
            for op in dom.operators}
