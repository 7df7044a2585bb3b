"""Capacity table construction and the finish-time / work-at queries."""

import random
from fractions import Fraction as F

import pytest

from sharedsched import (
    MachineProfile,
    SharedInterval,
    build_capacity_table,
    finish_time,
    work_at,
)


def _profile(*segments):
    intervals = []
    start = F(0)
    for end, ratio in segments:
        end = None if end is None else F(end)
        intervals.append(SharedInterval(start=start, end=end, ratio=F(ratio)))
        start = end
    return MachineProfile(intervals=tuple(intervals))


def test_table_for_slowdown_profile():
    table = build_capacity_table(_profile((1, 1), (None, F(1, 2))))
    assert table.breakpoints == (F(0), F(1))
    assert table.cum_work == (F(0), F(1))
    assert table.ratios == (F(1),)
    assert table.tail_ratio == F(1, 2)


def test_table_for_single_unbounded_interval():
    table = build_capacity_table(_profile((None, 1)))
    assert table.breakpoints == (F(0),)
    assert table.cum_work == (F(0),)
    assert table.tail_ratio == F(1)


def test_table_for_empty_profile_is_full_speed():
    table = build_capacity_table(MachineProfile(intervals=()))
    assert finish_time(table, F(7)) == F(7)
    assert work_at(table, F(7)) == F(7)


def test_finish_time_interpolates_within_a_segment():
    # full speed until 1, then half speed: 3 units of work need 1 + 2/(1/2)
    table = build_capacity_table(_profile((1, 1), (None, F(1, 2))))
    assert finish_time(table, F(3)) == F(5)


def test_finish_time_on_constant_ratio():
    table = build_capacity_table(_profile((None, F(3, 4))))
    assert finish_time(table, F(2)) == F(8, 3)


def test_cumulative_work_and_inverse_on_two_segment_table():
    table = build_capacity_table(_profile((2, 1), (10, F(1, 8))))
    assert work_at(table, F(2)) == F(2)
    assert work_at(table, F(10)) == F(3)
    assert finish_time(table, F(5, 2)) == F(6)
    assert work_at(table, F(6)) == F(5, 2)


def test_tail_rule_resumes_full_speed_after_last_breakpoint():
    table = build_capacity_table(_profile((2, 1), (10, F(1, 8))))
    # 4 units: 3 are done by t=10, the remaining 1 at full speed
    assert finish_time(table, F(4)) == F(11)
    assert work_at(table, F(11)) == F(4)


def test_zero_work_and_zero_time():
    table = build_capacity_table(_profile((2, 1), (10, F(1, 8))))
    assert finish_time(table, F(0)) == F(0)
    assert work_at(table, F(0)) == F(0)


def test_negative_arguments_are_rejected():
    table = build_capacity_table(_profile((None, 1)))
    with pytest.raises(ValueError):
        finish_time(table, F(-1))
    with pytest.raises(ValueError):
        work_at(table, F(-1))


def test_work_exactly_at_breakpoint_resolves_to_the_breakpoint():
    table = build_capacity_table(_profile((2, 1), (10, F(1, 8)), (None, F(1, 3))))
    for k, bp in enumerate(table.breakpoints):
        assert finish_time(table, table.cum_work[k]) == bp


def _random_table(rng):
    segments = []
    end = F(0)
    for _ in range(rng.randint(0, 5)):
        end = end + F(rng.randint(1, 40), rng.randint(1, 8))
        segments.append((end, F(rng.randint(1, 16), 16)))
    if rng.random() < 0.5:
        segments.append((None, F(rng.randint(1, 16), 16)))
    return build_capacity_table(_profile(*segments))


def test_round_trip_work_time_work_is_exact():
    rng = random.Random(2024)
    for _ in range(300):
        table = _random_table(rng)
        for _ in range(4):
            work = F(rng.randint(0, 4000), rng.randint(1, 16))
            t = finish_time(table, work)
            assert work_at(table, t) == work


def test_finish_time_is_strictly_increasing_in_work():
    rng = random.Random(99)
    for _ in range(200):
        table = _random_table(rng)
        w1 = F(rng.randint(0, 500), rng.randint(1, 8))
        w2 = w1 + F(rng.randint(1, 500), rng.randint(1, 8))
        assert finish_time(table, w1) < finish_time(table, w2)


def test_finish_time_bounds_follow_the_slowest_ratio_seen():
    rng = random.Random(7)
    for _ in range(200):
        table = _random_table(rng)
        work = F(rng.randint(1, 800), rng.randint(1, 8))
        t = finish_time(table, work)
        assert t >= work
        ratios = [
            table.ratios[k]
            for k in range(len(table.ratios))
            if table.breakpoints[k] < t
        ]
        if t > table.breakpoints[-1]:
            ratios.append(table.tail_ratio)
        slowest = min(ratios)
        assert t <= work / slowest
