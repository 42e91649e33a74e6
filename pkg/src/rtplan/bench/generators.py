"""Instance generators for the gripper and ferry benchmark domains."""
from __future__ import annotations

GRIPPER_DOMAIN = """\
(define (domain gripper-typed)
  (:requirements :strips :typing)
  (:types room ball gripper)
  (:predicates (at-robby ?r - room)
               (at ?b - ball ?r - room)
               (free ?g - gripper)
               (carry ?o - ball ?g - gripper))
  (:action move
    :parameters (?from ?to - room)
    :precondition (at-robby ?from)
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj - ball ?room - room ?gripper - gripper)
    :precondition (and (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room)) (not (free ?gripper))))
  (:action drop
    :parameters (?obj - ball ?room - room ?gripper - gripper)
    :precondition (and (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper) (not (carry ?obj ?gripper)))))
"""

FERRY_DOMAIN = """\
(define (domain ferry-typed)
  (:requirements :strips :typing)
  (:types car location)
  (:predicates (at-ferry ?l - location)
               (at ?c - car ?l - location)
               (empty-ferry)
               (on ?c - car))
  (:action sail
    :parameters (?from ?to - location)
    :precondition (at-ferry ?from)
    :effect (and (at-ferry ?to) (not (at-ferry ?from))))
  (:action board
    :parameters (?car - car ?loc - location)
    :precondition (and (at ?car ?loc) (at-ferry ?loc) (empty-ferry))
    :effect (and (on ?car) (not (at ?car ?loc)) (not (empty-ferry))))
  (:action debark
    :parameters (?car - car ?loc - location)
    :precondition (and (on ?car) (at-ferry ?loc))
    :effect (and (at ?car ?loc) (empty-ferry) (not (on ?car)))))
"""


def generate_gripper(n: int) -> tuple[str, str]:
    """Two rooms, two grippers, ``n`` balls to carry from rooma to roomb."""
    if n < 1:
        raise ValueError("gripper needs at least one ball")
    balls = [f"ball{i}" for i in range(1, n + 1)]
    init = ["(at-robby rooma)", "(free left)", "(free right)"]
    init += [f"(at {b} rooma)" for b in balls]
    goal = " ".join(f"(at {b} roomb)" for b in balls)
    problem = (
        f"(define (problem gripper-{n})\n"
        f"  (:domain gripper-typed)\n"
        f"  (:objects rooma roomb - room left right - gripper {' '.join(balls)} - ball)\n"
        f"  (:init {' '.join(init)})\n"
        f"  (:goal (and {goal})))\n"
    )
    return GRIPPER_DOMAIN, problem


def generate_ferry(n: int) -> tuple[str, str]:
    """One capacity-1 ferry and ``n`` cars, all moving from loc1 to loc2."""
    if n < 1:
        raise ValueError("ferry needs at least one car")
    cars = [f"car{i}" for i in range(1, n + 1)]
    init = ["(at-ferry loc1)", "(empty-ferry)"] + [f"(at {c} loc1)" for c in cars]
    goal = " ".join(f"(at {c} loc2)" for c in cars)
    problem = (
        f"(define (problem ferry-{n})\n"
        f"  (:domain ferry-typed)\n"
        f"  (:objects loc1 loc2 - location {' '.join(cars)} - car)\n"
        f"  (:init {' '.join(init)})\n"
        f"  (:goal (and {goal})))\n"
    )
    return FERRY_DOMAIN, problem


GENERATORS = {"gripper": generate_gripper, "ferry": generate_ferry}


def generate(spec: str) -> tuple[str, str]:
    """Build an instance from a ``name:size`` string such as ``gripper:5``."""
    try:
        name, size = spec.split(":")
        return GENERATORS[name](int(size))
    except (ValueError, KeyError) as exc:
        raise ValueError(f"bad generator {spec!r}; expected gripper:N or ferry:N") from exc
