"""Problem data model: machines with partially shared capacity, jobs, schedules.

Machines process a background workload that leaves only a fraction of their
speed for the jobs we schedule.  That fraction is piecewise constant over
time.  All arithmetic is exact (`fractions.Fraction`); nothing here rounds.

Job indices are 0-based inside the library and 1-based in serialized output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .capacity import build_capacity_table, finish_time

__all__ = [
    "SharedInterval",
    "MachineProfile",
    "Instance",
    "Schedule",
    "Objective",
    "validate_instance",
    "evaluate",
    "objective_value",
    "instance_to_json",
    "instance_from_json",
]


@dataclass(frozen=True)
class SharedInterval:
    """One rate segment ``(start, end]``; ``end is None`` means unbounded.

    `ratio` is the fraction of the machine's speed available to our jobs on
    the segment, in (0, 1].
    """

    start: Fraction
    end: Optional[Fraction]
    ratio: Fraction


@dataclass(frozen=True)
class MachineProfile:
    """Contiguous rate segments of one machine, starting at time 0.

    An empty interval tuple means the machine is fully available throughout.
    After the last finite breakpoint the machine is fully available again
    unless the final interval is unbounded.
    """

    intervals: tuple[SharedInterval, ...]
    machine_index: Optional[int] = None  # 1-based position, informational


@dataclass(frozen=True)
class Instance:
    """A scheduling instance.

    The first `m1` machines are guaranteed to keep at least an `e0` fraction
    of their speed available at all times; machines after them may drop
    arbitrarily low.
    """

    machines: tuple[MachineProfile, ...]
    jobs: tuple[Fraction, ...]
    m1: int
    e0: Fraction

    @property
    def m(self) -> int:
        return len(self.machines)

    @property
    def n(self) -> int:
        return len(self.jobs)


class Objective(Enum):
    MAKESPAN = "makespan"
    TOTAL_COMPLETION = "totaltime"


@dataclass(frozen=True)
class Schedule:
    """An evaluated schedule.

    `assignment[i]` lists 0-based job indices in the order machine i runs
    them; `completions[j]` is job j's completion time.  Machines never idle,
    so completions depend only on per-machine prefix work.
    """

    assignment: tuple[tuple[int, ...], ...]
    completions: tuple[Fraction, ...]
    makespan: Fraction
    total_completion: Fraction


def validate_instance(inst: Instance) -> list[str]:
    """Return a list of problems with the instance, empty when it is well formed.

    Never raises; callers decide what a nonempty report means.
    """
    errors: list[str] = []
    m = len(inst.machines)
    if m == 0:
        errors.append("instance has no machines")
    if len(inst.jobs) == 0:
        errors.append("instance has no jobs")
    for j, p in enumerate(inst.jobs):
        if p <= 0:
            errors.append(f"job {j + 1}: processing time {p} is not positive")
    if not (1 <= inst.m1 <= max(m, 1)):
        errors.append(f"m1={inst.m1} is outside [1, {m}]")
    if not (0 < inst.e0 <= 1):
        errors.append(f"e0={inst.e0} is outside (0, 1]")
    for i, mp in enumerate(inst.machines, start=1):
        prev_end: Optional[Fraction] = Fraction(0)
        for k, iv in enumerate(mp.intervals, start=1):
            where = f"machine {i} interval {k}"
            if prev_end is None:
                errors.append(f"{where}: follows an unbounded interval")
                break
            if iv.start != prev_end:
                errors.append(f"{where}: starts at {iv.start}, expected {prev_end}")
            if iv.end is not None and iv.end <= iv.start:
                errors.append(f"{where}: empty or reversed ({iv.start}, {iv.end}]")
            if not (0 < iv.ratio <= 1):
                errors.append(f"{where}: ratio {iv.ratio} is outside (0, 1]")
            if i <= inst.m1 and iv.ratio < inst.e0:
                errors.append(
                    f"{where}: ratio {iv.ratio} below e0={inst.e0} on a bounded machine"
                )
            prev_end = iv.end
    return errors


def evaluate(inst: Instance, assignment: Sequence[Sequence[int]]) -> Schedule:
    """Compute every job's completion time for a fixed assignment.

    `assignment` must partition the job indices across exactly the instance's
    machines; jobs run back to back in the given per-machine order.
    """
    n = inst.n
    if len(assignment) != inst.m:
        raise ValueError(f"assignment covers {len(assignment)} machines, instance has {inst.m}")
    seen = sorted(j for seq in assignment for j in seq)
    if seen != list(range(n)):
        raise ValueError("assignment is not a partition of the job indices")
    completions: list[Fraction] = [Fraction(0)] * n
    for mp, seq in zip(inst.machines, assignment):
        table = build_capacity_table(mp)
        prefix = Fraction(0)
        for j in seq:
            prefix += inst.jobs[j]
            completions[j] = finish_time(table, prefix)
    makespan = max(completions, default=Fraction(0))
    total = sum(completions, Fraction(0))
    return Schedule(
        assignment=tuple(tuple(seq) for seq in assignment),
        completions=tuple(completions),
        makespan=makespan,
        total_completion=total,
    )


def objective_value(schedule: Schedule, objective: Objective) -> Fraction:
    if objective is Objective.MAKESPAN:
        return schedule.makespan
    return schedule.total_completion


def _frac_to_str(value: Fraction) -> str:
    return str(value)


def _frac_from_str(text, what: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{what}: cannot parse {text!r} as a rational") from exc


def instance_to_json(inst: Instance) -> str:
    """Serialize an instance; exact rationals become "p/q" strings."""
    payload = {
        "machines": [
            {
                "intervals": [
                    {
                        "start": _frac_to_str(iv.start),
                        "end": "inf" if iv.end is None else _frac_to_str(iv.end),
                        "ratio": _frac_to_str(iv.ratio),
                    }
                    for iv in mp.intervals
                ]
            }
            for mp in inst.machines
        ],
        "jobs": [_frac_to_str(p) for p in inst.jobs],
        "m1": inst.m1,
        "e0": _frac_to_str(inst.e0),
    }
    return json.dumps(payload, indent=2)


def instance_from_json(text: str) -> Instance:
    """Parse an instance; raises ValueError on malformed input."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError("instance JSON must be an object")
    try:
        raw_machines = payload["machines"]
        raw_jobs = payload["jobs"]
        raw_m1 = payload["m1"]
        raw_e0 = payload["e0"]
    except KeyError as exc:
        raise ValueError(f"instance JSON is missing key {exc}") from exc
    machines = []
    for i, raw_mp in enumerate(raw_machines, start=1):
        intervals = []
        for k, raw_iv in enumerate(raw_mp.get("intervals", []), start=1):
            where = f"machine {i} interval {k}"
            start = _frac_from_str(raw_iv["start"], where)
            raw_end = raw_iv["end"]
            end = None if raw_end == "inf" else _frac_from_str(raw_end, where)
            ratio = _frac_from_str(raw_iv["ratio"], where)
            intervals.append(SharedInterval(start=start, end=end, ratio=ratio))
        machines.append(MachineProfile(intervals=tuple(intervals), machine_index=i))
    if not isinstance(raw_m1, int) or isinstance(raw_m1, bool):
        raise ValueError("m1 must be an integer")
    inst = Instance(
        machines=tuple(machines),
        jobs=tuple(_frac_from_str(p, f"job {j + 1}") for j, p in enumerate(raw_jobs)),
        m1=raw_m1,
        e0=_frac_from_str(raw_e0, "e0"),
    )
    errors = validate_instance(inst)
    if errors:
        raise ValueError("; ".join(errors))
    return inst
