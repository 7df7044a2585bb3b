"""Approximation schemes: trade running time for a (1 + epsilon) guarantee.

For makespan: place the d largest jobs in every possible way, finish each
branch greedily, keep the best branch.  For the completion-time sum: sweep
jobs shortest-first through a state space of per-machine (load, cost) pairs,
merging states that agree bucket-by-bucket on a geometric grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .capacity import build_capacity_table, finish_time
from .heuristics import OrderRule, ect_placement, job_order
from .model import Instance, Schedule, evaluate

__all__ = [
    "compute_d",
    "makespan_scheme",
    "GeometricBuckets",
    "similar",
    "PartialState",
    "totaltime_scheme",
]


def _check_epsilon(epsilon: Fraction) -> Fraction:
    epsilon = Fraction(epsilon)
    if not (0 < epsilon < 1):
        raise ValueError(f"epsilon={epsilon} is outside (0, 1)")
    return epsilon


def compute_d(m: int, m1: int, e0: Fraction, epsilon: Fraction, n: int) -> int:
    """How many of the largest jobs to enumerate for a (1 + epsilon) makespan.

    When every machine keeps an e0 share the cheaper count m/(epsilon*e0)
    suffices; either way d never exceeds n.
    """
    epsilon = _check_epsilon(epsilon)
    e0 = Fraction(e0)
    if not (0 < e0 <= 1):
        raise ValueError(f"e0={e0} is outside (0, 1]")
    if not (1 <= m1 <= m):
        raise ValueError(f"m1={m1} is outside [1, {m}]")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m1 == m:
        d = math.ceil(Fraction(m) / (epsilon * e0))
    else:
        d = math.ceil(Fraction(m * (m + m1 - 1)) / (epsilon * e0 * m1))
    return min(n, d)


def makespan_scheme(inst: Instance, d: int) -> Schedule:
    """Best-of-enumeration makespan schedule.

    Tries all m^d placements of the d longest jobs; the rest follow longest
    first onto whichever machine completes them earliest.  Ties keep the
    lexicographically smallest placement vector, so the result is
    deterministic.
    """
    n, m = inst.n, inst.m
    if not (0 <= d <= n):
        raise ValueError(f"d={d} is outside [0, {n}]")
    if m == 0:
        raise ValueError("instance has no machines")
    tables = [build_capacity_table(mp) for mp in inst.machines]
    by_length = job_order(inst.jobs, OrderRule.LPT)
    large = by_length[:d]
    rest = by_length[d:]
    jobs = inst.jobs

    loads = [Fraction(0)] * m
    choice = [0] * d
    best: Optional[tuple[Fraction, tuple[int, ...], tuple[int, ...]]] = None

    def finish_branch() -> None:
        nonlocal best
        branch_loads = loads.copy()
        rest_choice = []
        for j in rest:
            i, _ = ect_placement(tables, branch_loads, jobs[j])
            branch_loads[i] += jobs[j]
            rest_choice.append(i)
        mk = max(finish_time(tables[i], branch_loads[i]) for i in range(m))
        if best is None or mk < best[0]:
            best = (mk, tuple(choice), tuple(rest_choice))

    def place(t: int) -> None:
        if t == d:
            finish_branch()
            return
        p = jobs[large[t]]
        for i in range(m):
            loads[i] += p
            choice[t] = i
            place(t + 1)
            loads[i] -= p

    place(0)
    assert best is not None
    assignment: list[list[int]] = [[] for _ in range(m)]
    for j, i in zip(large, best[1]):
        assignment[i].append(j)
    for j, i in zip(rest, best[2]):
        assignment[i].append(j)
    return evaluate(inst, assignment)


class GeometricBuckets:
    """Geometric value buckets [q^x, q^(x+1)) with q = 1 + delta.

    Bucket indices are found from a float log estimate and then pinned down
    by exact integer comparisons against cached powers of q, so two values
    land in the same bucket exactly when the rationals say so.  Zero gets its
    own bucket (None).
    """

    def __init__(self, delta: Fraction):
        delta = Fraction(delta)
        if delta <= 0:
            raise ValueError("delta must be positive")
        q = 1 + delta
        self._qn = q.numerator
        self._qd = q.denominator
        self._log_q = math.log(self._qn) - math.log(self._qd)
        self._pow_n: dict[int, int] = {0: 1}
        self._pow_d: dict[int, int] = {0: 1}
        self._index_cache: dict[Fraction, int] = {}

    def _power(self, cache: dict[int, int], base: int, y: int) -> int:
        got = cache.get(y)
        if got is None:
            prev = cache.get(y - 1)
            got = prev * base if prev is not None else base**y
            cache[y] = got
        return got

    def _at_least(self, num: int, den: int, x: int) -> bool:
        # num/den >= q^x, by cross-multiplication with integer powers
        if x >= 0:
            return num * self._power(self._pow_d, self._qd, x) >= den * self._power(
                self._pow_n, self._qn, x
            )
        y = -x
        return num * self._power(self._pow_n, self._qn, y) >= den * self._power(
            self._pow_d, self._qd, y
        )

    def index(self, value: Fraction) -> Optional[int]:
        """Bucket index of a nonnegative value; None is the zero bucket."""
        if value == 0:
            return None
        if value < 0:
            raise ValueError("bucketed values must be nonnegative")
        got = self._index_cache.get(value)
        if got is not None:
            return got
        num, den = value.numerator, value.denominator
        x = math.floor((math.log(num) - math.log(den)) / self._log_q)
        while not self._at_least(num, den, x):
            x -= 1
        while self._at_least(num, den, x + 1):
            x += 1
        self._index_cache[value] = x
        return x


@dataclass(frozen=True)
class PartialState:
    """Per-machine (load, completion-time sum) after a prefix of jobs.

    `machine` is where the most recent job went; following `parent` links
    back to the root recovers the whole assignment.  `serial` is the creation
    order, used for deterministic tie-breaking.
    """

    loads: tuple[Fraction, ...]
    costs: tuple[Fraction, ...]
    parent: Optional["PartialState"] = field(repr=False, default=None)
    machine: Optional[int] = None
    serial: int = 0


def _signature(state: PartialState, buckets: GeometricBuckets) -> tuple:
    return tuple(
        (buckets.index(load), buckets.index(cost))
        for load, cost in zip(state.loads, state.costs)
    )


def similar(s1: PartialState, s2: PartialState, delta: Fraction) -> bool:
    """True when both states agree bucket-by-bucket on every load and cost."""
    if len(s1.loads) != len(s2.loads):
        raise ValueError("states span different machine counts")
    buckets = GeometricBuckets(delta)
    return _signature(s1, buckets) == _signature(s2, buckets)


def totaltime_scheme(
    inst: Instance,
    epsilon: Fraction,
    delta: Optional[Fraction] = None,
    infer_e0: bool = False,
    on_step=None,
) -> Schedule:
    """(1 + epsilon)-approximate completion-time sum via state-space sweeps.

    Requires every machine except possibly the last to keep at least an e0
    share (m1 >= m - 1).  Jobs are processed shortest-first; after each job,
    states with identical bucket signatures are merged, keeping the one with
    the smaller load on the last machine (ties keep the older state).  Pass
    delta=0 to disable merging, which makes the sweep exact.  `on_step`, if
    given, is called with (job_index, kept_states) after each job.
    """
    n, m = inst.n, inst.m
    if m == 0:
        raise ValueError("instance has no machines")
    if inst.m1 < m - 1:
        raise ValueError(
            f"m1={inst.m1} but the guarantee needs bounded shares on the first {m - 1} machines"
        )
    epsilon = _check_epsilon(epsilon)
    if delta is None:
        e0 = inst.e0
        if infer_e0 and m > 1:
            e0 = min(
                (iv.ratio for mp in inst.machines[: m - 1] for iv in mp.intervals),
                default=Fraction(1),
            )
        delta = epsilon * e0 / (6 * n)
    else:
        delta = Fraction(delta)
        if delta < 0:
            raise ValueError("delta must be nonnegative")

    tables = [build_capacity_table(mp) for mp in inst.machines]
    jobs = inst.jobs
    zero = (Fraction(0),) * m
    root = PartialState(loads=zero, costs=zero)
    states: list[PartialState] = [root]
    signatures: Optional[list[tuple]] = None
    buckets = GeometricBuckets(delta) if delta > 0 else None
    if buckets is not None:
        signatures = [_signature(root, buckets)]
    serial = 1

    for j in job_order(jobs, OrderRule.SPT):
        p = jobs[j]
        extended: list[PartialState] = []
        extended_sigs: list[tuple] = []
        for idx, s in enumerate(states):
            for i in range(m):
                c = finish_time(tables[i], s.loads[i] + p)
                loads = s.loads[:i] + (s.loads[i] + p,) + s.loads[i + 1 :]
                costs = s.costs[:i] + (s.costs[i] + c,) + s.costs[i + 1 :]
                extended.append(PartialState(loads, costs, s, i, serial))
                serial += 1
                if buckets is not None:
                    sig = list(signatures[idx])
                    sig[i] = (buckets.index(loads[i]), buckets.index(costs[i]))
                    extended_sigs.append(tuple(sig))
        if buckets is None:
            states = extended
        else:
            kept: dict[tuple, int] = {}
            for pos, sig in enumerate(extended_sigs):
                prev = kept.get(sig)
                # survivor keeps the smaller load on the last machine
                if prev is None or extended[pos].loads[m - 1] < extended[prev].loads[m - 1]:
                    kept[sig] = pos
            order = sorted(kept.values())
            states = [extended[pos] for pos in order]
            signatures = [extended_sigs[pos] for pos in order]
        if on_step is not None:
            on_step(j, states)

    best = min(states, key=lambda s: (sum(s.costs, Fraction(0)), s.serial))
    assignment: list[list[int]] = [[] for _ in range(m)]
    chain: list[int] = []
    node = best
    while node.parent is not None:
        chain.append(node.machine)
        node = node.parent
    chain.reverse()
    for j, i in zip(job_order(jobs, OrderRule.SPT), chain):
        assignment[i].append(j)
    return evaluate(inst, assignment)
