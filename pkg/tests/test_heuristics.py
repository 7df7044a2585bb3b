"""Greedy list schedulers: worked examples, tie-breaks, placement invariants."""

import random
from fractions import Fraction as F

import pytest

from sharedsched import (
    OrderRule,
    PlacementRule,
    RandomSpec,
    build_capacity_table,
    finish_time,
    guarantee_ratio,
    job_order,
    list_schedule,
    lpt,
    lpt_ect,
    ls,
    ls_ect,
    named_example,
    random_instance,
    spt,
    spt_ect,
)


def test_job_order_rules_and_index_tie_breaks():
    jobs = (F(2), F(3), F(2), F(1))
    assert job_order(jobs, OrderRule.INPUT) == [0, 1, 2, 3]
    assert job_order(jobs, OrderRule.LPT) == [1, 0, 2, 3]
    assert job_order(jobs, OrderRule.SPT) == [3, 0, 2, 1]


def test_ls_splits_across_a_nearly_unavailable_machine():
    inst = named_example("ls_bad", e0=F(1, 2), x=F(1, 100))
    sched = ls(inst)
    assert sched.makespan == F(100)
    assert sched.assignment == ((0,), (1,))


def test_ls_ect_avoids_the_nearly_unavailable_machine():
    inst = named_example("ls_bad", e0=F(1, 2), x=F(1, 100))
    sched = ls_ect(inst)
    assert sched.makespan == F(4)
    assert sched.assignment == ((0, 1), ())


def test_lpt_spreads_two_jobs_but_lpt_ect_stacks_them():
    inst = named_example("lpt_n2", e0=F(1, 4))
    assert lpt(inst).makespan == F(4)  # one job lands on the 1/4-speed machine
    assert lpt_ect(inst).makespan == F(2)


def test_lpt_ect_worked_example_with_three_jobs():
    inst = named_example("lptect_322")
    sched = lpt_ect(inst)
    assert sched.makespan == F(5)
    assert sched.completions == (F(3), F(8, 3), F(5))
    assert sched.assignment == ((0, 2), (1,))


def test_spt_and_spt_ect_worked_examples():
    inst = named_example("spt_vs_sptect")
    assert spt(inst).total_completion == F(8)
    assert spt_ect(inst).total_completion == F(7)
    bigger = named_example("spt_vs_sptect_plus3")
    assert spt(bigger).total_completion == F(13)
    assert spt_ect(bigger).total_completion == F(14)


def test_machine_ties_go_to_the_lowest_index():
    inst = named_example("spt_vs_sptect")
    sched = spt_ect(inst)
    # the first job completes at 1 on both machines; machine 1 wins
    assert 0 in sched.assignment[0]
    sched = spt(inst)
    assert 0 in sched.assignment[0]


def test_earliest_completion_choice_is_optimal_per_step():
    # replay each placement and confirm no other machine finishes the job sooner
    for seed in range(25):
        inst = random_instance(RandomSpec(n=7, m=3, m1=1, e0=F(1, 2), seed=seed))
        tables = [build_capacity_table(mp) for mp in inst.machines]
        sched = list_schedule(inst, OrderRule.INPUT, PlacementRule.EARLIEST_COMPLETION)
        loads = [F(0)] * inst.m
        placed_on = {j: i for i, seq in enumerate(sched.assignment) for j in seq}
        for j in range(inst.n):
            i = placed_on[j]
            chosen = finish_time(tables[i], loads[i] + inst.jobs[j])
            for other in range(inst.m):
                hypothetical = finish_time(tables[other], loads[other] + inst.jobs[j])
                assert chosen <= hypothetical
            loads[i] += inst.jobs[j]
            assert sched.completions[j] == chosen


def test_earliest_start_and_earliest_completion_agree_at_full_speed():
    for seed in range(25):
        inst = random_instance(RandomSpec(n=8, m=3, m1=3, e0=F(1), seed=seed))
        assert all(iv.ratio == 1 for mp in inst.machines for iv in mp.intervals)
        assert ls(inst).assignment == ls_ect(inst).assignment
        assert lpt(inst).assignment == lpt_ect(inst).assignment


def test_wrappers_match_list_schedule():
    inst = named_example("spt_vs_sptect_plus3")
    assert spt(inst) == list_schedule(inst, OrderRule.SPT, PlacementRule.EARLIEST_START)
    assert lpt_ect(inst) == list_schedule(inst, OrderRule.LPT, PlacementRule.EARLIEST_COMPLETION)


def test_guarantee_ratio_formulas():
    half = F(1, 2)
    assert guarantee_ratio("ls", n=5, m=3, m1=3, e0=half) == F(3)
    assert guarantee_ratio("ls", n=5, m=3, m1=2, e0=half) is None
    assert guarantee_ratio("ls-ect", n=5, m=3, m1=1, e0=half) == F(7)
    assert guarantee_ratio("ls-ect", n=5, m=3, m1=2, e0=half) == F(3)
    assert guarantee_ratio("lpt-ect", n=5, m=3, m1=1, e0=half) == 1 + (2 + F(3, 5)) * 2
    assert guarantee_ratio("lpt-ect", n=5, m=3, m1=2, e0=half) == 1 + F(3, 5) * 2
    assert guarantee_ratio("spt", n=5, m=3, m1=1, e0=half) is None
    assert guarantee_ratio("spt-ect", n=5, m=2, m1=1, e0=half) == F(4)
    assert guarantee_ratio("scheme-makespan", n=5, m=2, m1=1, e0=half, epsilon=F(1, 4)) == F(5, 4)
    assert guarantee_ratio("oracle", n=5, m=2, m1=1, e0=half) == F(1)
    with pytest.raises(ValueError):
        guarantee_ratio("nope", n=5, m=2, m1=1, e0=half)
