from __future__ import annotations

import pytest

from rtplan.bench.generators import generate_ferry, generate_gripper
from rtplan.pddl import load_task

from toy_tasks import CORRIDOR_DOMAIN, CORRIDOR_PROBLEM

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_report():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def gripper():
    cache = {}

    def make(n: int):
        if n not in cache:
            cache[n] = load_task(*generate_gripper(n))
        return cache[n]

    return make


@pytest.fixture(scope="session")
def ferry():
    cache = {}

    def make(n: int):
        if n not in cache:
            cache[n] = load_task(*generate_ferry(n))
        return cache[n]

    return make


@pytest.fixture(scope="session")
def gripper2(gripper):
    return gripper(2)


@pytest.fixture(scope="session")
def corridor():
    return load_task(CORRIDOR_DOMAIN, CORRIDOR_PROBLEM)
