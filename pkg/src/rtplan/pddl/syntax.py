"""Lifted domain and problem definitions (the STRIPS + typing subset)."""
from __future__ import annotations

from dataclasses import dataclass, field

ROOT_TYPE = "object"

TypedName = tuple[str, str]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(" + " ".join((self.predicate,) + self.args) + ")"


@dataclass(frozen=True)
class Predicate:
    name: str
    params: tuple[TypedName, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class OperatorSchema:
    name: str
    params: tuple[TypedName, ...]
    precond: tuple[Atom, ...]
    add: tuple[Atom, ...]
    delete: tuple[Atom, ...]


@dataclass(frozen=True)
class DomainDef:
    name: str
    requirements: tuple[str, ...] = ()
    # (type, parent) pairs in declaration order
    types: tuple[TypedName, ...] = ()
    constants: tuple[TypedName, ...] = ()
    predicates: tuple[Predicate, ...] = ()
    operators: tuple[OperatorSchema, ...] = ()
    _pred_index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def predicate(self, name: str) -> Predicate | None:
        if self._pred_index is None:
            object.__setattr__(self, "_pred_index", {p.name: p for p in self.predicates})
        return self._pred_index.get(name)

    def operator(self, name: str) -> OperatorSchema:
        for op in self.operators:
            if op.name == name:
                return op
        raise KeyError(name)

    @property
    def typed(self) -> bool:
        return bool(self.types) or ":typing" in self.requirements

    def type_parents(self) -> dict[str, str]:
        return dict(self.types)

    def is_subtype(self, t: str, ancestor: str) -> bool:
        if ancestor == ROOT_TYPE or t == ancestor:
            return True
        parents = self.type_parents()
        seen = set()
        while t in parents and t not in seen:
            seen.add(t)
            t = parents[t]
            if t == ancestor:
                return True
        return False


@dataclass(frozen=True)
class ProblemDef:
    name: str
    domain_name: str
    objects: tuple[TypedName, ...] = ()
    init: tuple[Atom, ...] = ()
    goal: tuple[Atom, ...] = ()
