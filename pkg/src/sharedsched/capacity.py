"""Cumulative-capacity tables for machines that lend only part of their speed.

A machine's availability is a piecewise-constant rate over left-open,
right-closed intervals.  The table below turns that into cumulative work at
each breakpoint, so completion-time queries become a binary search plus one
linear interpolation.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .model import MachineProfile

__all__ = ["CapacityTable", "build_capacity_table", "finish_time", "work_at"]


@dataclass(frozen=True)
class CapacityTable:
    """Breakpoints and cumulative work for one machine.

    ``breakpoints[k]`` is the end of the k-th rate segment (``breakpoints[0]``
    is always 0) and ``cum_work[k]`` is the total work the machine completes
    by that time when never idle.  ``ratios[k]`` is the rate on the segment
    ``(breakpoints[k], breakpoints[k+1]]``.  Past the last breakpoint the
    machine runs at ``tail_ratio``.
    """

    breakpoints: tuple[Fraction, ...]
    cum_work: tuple[Fraction, ...]
    ratios: tuple[Fraction, ...]
    tail_ratio: Fraction


def build_capacity_table(profile: "MachineProfile") -> CapacityTable:
    """Precompute cumulative work at every breakpoint of a machine profile.

    A profile that ends at a finite breakpoint implicitly continues at full
    rate; a profile whose last interval is unbounded contributes its ratio as
    the tail rate instead.
    """
    breakpoints = [Fraction(0)]
    cum_work = [Fraction(0)]
    ratios: list[Fraction] = []
    tail_ratio = Fraction(1)
    for iv in profile.intervals:
        if iv.end is None:
            tail_ratio = iv.ratio
            break
        breakpoints.append(iv.end)
        cum_work.append(cum_work[-1] + iv.ratio * (iv.end - iv.start))
        ratios.append(iv.ratio)
    return CapacityTable(tuple(breakpoints), tuple(cum_work), tuple(ratios), tail_ratio)


def finish_time(table: CapacityTable, work) -> Fraction:
    """Earliest time by which a never-idle machine completes `work` units.

    Exact inverse of :func:`work_at` for nonnegative work.
    """
    work = Fraction(work)
    if work < 0:
        raise ValueError("work must be nonnegative")
    cum = table.cum_work
    if work <= cum[-1]:
        # leftmost segment reaching the work, so a value landing exactly on a
        # breakpoint resolves to the earlier time
        k = bisect_left(cum, work)
        if k == 0:
            return table.breakpoints[0]
        return table.breakpoints[k - 1] + (work - cum[k - 1]) / table.ratios[k - 1]
    return table.breakpoints[-1] + (work - cum[-1]) / table.tail_ratio


def work_at(table: CapacityTable, t) -> Fraction:
    """Total work a never-idle machine completes by time `t`."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("time must be nonnegative")
    bps = table.breakpoints
    if t <= bps[-1]:
        k = bisect_left(bps, t)
        if k == 0:
            return table.cum_work[0]
        return table.cum_work[k - 1] + table.ratios[k - 1] * (t - bps[k - 1])
    return table.cum_work[-1] + table.tail_ratio * (t - bps[-1])
