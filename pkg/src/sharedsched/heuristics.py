"""List scheduling: pick a job order, then place each job greedily.

Two placement rules are supported: earliest start (the machine whose last job
finishes soonest) and earliest completion (the machine where this job would
finish soonest).  Ties always go to the lowest machine index, and equal
processing times keep the lower job index first, so every run is
deterministic.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .capacity import CapacityTable, build_capacity_table, finish_time
from .model import Instance, Schedule, evaluate

__all__ = [
    "OrderRule",
    "PlacementRule",
    "job_order",
    "list_schedule",
    "ls",
    "lpt",
    "ls_ect",
    "lpt_ect",
    "spt",
    "spt_ect",
    "ect_placement",
    "guarantee_ratio",
]


class OrderRule(Enum):
    INPUT = "input"
    LPT = "lpt"
    SPT = "spt"


class PlacementRule(Enum):
    EARLIEST_START = "earliest-start"
    EARLIEST_COMPLETION = "earliest-completion"


def job_order(jobs: Sequence[Fraction], rule: OrderRule) -> list[int]:
    """Job indices in list order; equal processing times keep index order."""
    order = list(range(len(jobs)))
    if rule is OrderRule.LPT:
        order.sort(key=lambda j: (-jobs[j], j))
    elif rule is OrderRule.SPT:
        order.sort(key=lambda j: (jobs[j], j))
    return order


def ect_placement(
    tables: Sequence[CapacityTable], loads: Sequence[Fraction], p: Fraction
) -> tuple[int, Fraction]:
    """Machine (and resulting completion) where a job of length p finishes first."""
    best_i = 0
    best_c = finish_time(tables[0], loads[0] + p)
    for i in range(1, len(tables)):
        c = finish_time(tables[i], loads[i] + p)
        if c < best_c:
            best_i, best_c = i, c
    return best_i, best_c


def list_schedule(inst: Instance, order: OrderRule, placement: PlacementRule) -> Schedule:
    """Greedy schedule for the given order and placement rule."""
    m = inst.m
    if m == 0:
        raise ValueError("instance has no machines")
    tables = [build_capacity_table(mp) for mp in inst.machines]
    loads = [Fraction(0)] * m
    finishes = [Fraction(0)] * m
    assignment: list[list[int]] = [[] for _ in range(m)]
    for j in job_order(inst.jobs, order):
        p = inst.jobs[j]
        if placement is PlacementRule.EARLIEST_START:
            i = min(range(m), key=lambda k: finishes[k])
            c = finish_time(tables[i], loads[i] + p)
        else:
            i, c = ect_placement(tables, loads, p)
        assignment[i].append(j)
        loads[i] += p
        finishes[i] = c
    return evaluate(inst, assignment)


def ls(inst: Instance) -> Schedule:
    return list_schedule(inst, OrderRule.INPUT, PlacementRule.EARLIEST_START)


def lpt(inst: Instance) -> Schedule:
    return list_schedule(inst, OrderRule.LPT, PlacementRule.EARLIEST_START)


def ls_ect(inst: Instance) -> Schedule:
    return list_schedule(inst, OrderRule.INPUT, PlacementRule.EARLIEST_COMPLETION)


def lpt_ect(inst: Instance) -> Schedule:
    return list_schedule(inst, OrderRule.LPT, PlacementRule.EARLIEST_COMPLETION)


def spt(inst: Instance) -> Schedule:
    return list_schedule(inst, OrderRule.SPT, PlacementRule.EARLIEST_START)


def spt_ect(inst: Instance) -> Schedule:
    return list_schedule(inst, OrderRule.SPT, PlacementRule.EARLIEST_COMPLETION)


def guarantee_ratio(
    algorithm: str,
    *,
    n: int,
    m: int,
    m1: int,
    e0: Fraction,
    epsilon: Optional[Fraction] = None,
) -> Optional[Fraction]:
    """Proven worst-case ratio to the optimum, or None when no bound applies.

    For the earliest-start rules a bound only exists when every machine keeps
    at least an e0 share (m1 = m).  SPT alone has no bound at all: its ratio
    grows without limit as the unguarded machine's share shrinks.
    """
    e0 = Fraction(e0)
    if algorithm in ("ls", "lpt"):
        return 1 + 1 / e0 if m1 == m else None
    if algorithm == "ls-ect":
        if m1 >= m - 1:
            return 1 + 1 / e0
        return 1 + ((m - 1) // m1 + 1) / e0
    if algorithm == "lpt-ect":
        bound = 1 + ((m - 1) // m1 + Fraction(m, n)) / e0
        if m1 >= m - 1:
            bound = min(bound, 1 + Fraction(m, n) / e0)
        return bound
    if algorithm == "spt":
        return None
    if algorithm == "spt-ect":
        return Fraction(math.ceil(Fraction(m, m1))) / e0
    if algorithm in ("scheme-makespan", "scheme-totaltime"):
        return None if epsilon is None else 1 + Fraction(epsilon)
    if algorithm == "oracle":
        return Fraction(1)
    raise ValueError(f"unknown algorithm {algorithm!r}")
