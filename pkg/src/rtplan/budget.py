"""Decision budgets: wall-clock seconds, a deterministic work count, or both."""
from __future__ import annotations

import time
from dataclasses import dataclass


@dataclass(frozen=True)
class Budget:
    """How much work one decision may use.

    ``iterations`` counts MHSP iterations or A*/BFS node expansions, which
    makes runs reproducible. ``seconds`` is checked against a monotonic clock.
    When both are set, whichever runs out first ends the search.
    """

    seconds: float | None = None
    iterations: int | None = None

    def __post_init__(self):
        if self.seconds is None and self.iterations is None:
            raise ValueError("a budget needs seconds or iterations")
        if self.seconds is not None and self.seconds <= 0:
            raise ValueError("budget seconds must be positive")
        if self.iterations is not None and self.iterations < 1:
            raise ValueError("budget iterations must be at least 1")

    @classmethod
    def ms(cls, milliseconds: float) -> "Budget":
        return cls(seconds=milliseconds / 1000.0)

    @classmethod
    def iters(cls, n: int) -> "Budget":
        return cls(iterations=int(n))

    @property
    def deterministic(self) -> bool:
        return self.seconds is None

    def start(self) -> "Clock":
        return Clock(self)

    def __str__(self) -> str:
        if self.seconds is None:
            return f"{self.iterations}it"
        if self.iterations is None:
            return f"{self.seconds * 1000:g}ms"
        return f"{self.seconds * 1000:g}ms/{self.iterations}it"


class Clock:
    """Running budget. ``tick()`` is called once before each unit of work."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.count = 0
        self.t0 = time.perf_counter()
        self._deadline = None if budget.seconds is None else self.t0 + budget.seconds

    def tick(self) -> bool:
        b = self.budget
        if b.iterations is not None and self.count >= b.iterations:
            return False
        # the first unit of work is always granted
        if self._deadline is not None and self.count and time.perf_counter() >= self._deadline:
            return False
        self.count += 1
        return True

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.t0
