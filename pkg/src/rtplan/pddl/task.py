"""Grounded STRIPS tasks: states, actions, plans and progression."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import NotApplicable
from .syntax import Atom

# A state is the frozenset of true fact ids; equal sets hash equal.
State = frozenset


@dataclass(frozen=True, eq=False)
class GroundAction:
    index: int
    name: str
    args: tuple[str, ...]
    pre: frozenset
    add: frozenset
    delete: frozenset

    def __str__(self) -> str:
        return "(" + " ".join((self.name,) + self.args) + ")"

    def __repr__(self) -> str:
        return f"GroundAction{str(self)}"


@dataclass(frozen=True)
class Plan:
    actions: tuple[GroundAction, ...] = ()

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    @property
    def length(self) -> int:
        return len(self.actions)

    def names(self) -> list[str]:
        return [str(a) for a in self.actions]

    def __str__(self) -> str:
        return " ".join(self.names())


@dataclass(eq=False)
class GroundTask:
    facts: list[Atom]
    actions: list[GroundAction]
    s0: State
    goal: State
    name: str = ""
    fact_index: dict[Atom, int] = field(default=None, repr=False)

    def __post_init__(self):
        if self.fact_index is None:
            self.fact_index = {f: i for i, f in enumerate(self.facts)}

    def fact_id(self, atom: Atom | str) -> int:
        if isinstance(atom, str):
            atom = atom_from_string(atom)
        return self.fact_index[atom]

    def state(self, atoms: Iterable[Atom | str]) -> State:
        return frozenset(self.fact_id(a) for a in atoms)

    def atoms(self, state: State) -> list[Atom]:
        return sorted((self.facts[i] for i in state), key=str)

    def action(self, text: str) -> GroundAction:
        """Look up a ground action by its ``(name arg ...)`` form."""
        key = text.strip().strip("()").lower().split()
        for a in self.actions:
            if [a.name, *a.args] == key:
                return a
        raise KeyError(text)

    def is_goal(self, state: State) -> bool:
        return self.goal <= state

    def applicable_actions(self, state: State) -> list[GroundAction]:
        return [a for a in self.actions if a.pre <= state]

    def successors(self, state: State) -> Iterator[tuple[GroundAction, State]]:
        for a in self.actions:
            if a.pre <= state:
                yield a, (state | a.add) - a.delete

    def run(self, plan: Iterable[GroundAction], start: State | None = None) -> State:
        """Replay a plan with applicability checks and return the end state."""
        s = self.s0 if start is None else start
        for a in plan:
            s = apply(s, a)
        return s


def atom_from_string(text: str) -> Atom:
    parts = text.strip().strip("()").lower().split()
    return Atom(parts[0], tuple(parts[1:]))


def applicable(s: State, a: GroundAction) -> bool:
    return a.pre <= s


def apply(s: State, a: GroundAction) -> State:
    if not a.pre <= s:
        raise NotApplicable(f"{a} is not applicable")
    return (s | a.add) - a.delete


def apply_unchecked(s: State, a: GroundAction) -> State:
    return (s | a.add) - a.delete


def is_goal(s: State, g: State) -> bool:
    return g <= s
