"""Instance validation, schedule evaluation, and JSON round-trips."""

import random
from fractions import Fraction as F

import pytest

from sharedsched import (
    Instance,
    MachineProfile,
    Objective,
    SharedInterval,
    evaluate,
    instance_from_json,
    instance_to_json,
    named_example,
    objective_value,
    random_instance,
    RandomSpec,
    validate_instance,
)


def _machine(*segments, index=None):
    intervals = []
    start = F(0)
    for end, ratio in segments:
        end = None if end is None else F(end)
        intervals.append(SharedInterval(start=start, end=end, ratio=F(ratio)))
        start = end
    return MachineProfile(intervals=tuple(intervals), machine_index=index)


def _instance(machines, jobs, m1=None, e0=F(1)):
    return Instance(
        machines=tuple(machines),
        jobs=tuple(F(p) for p in jobs),
        m1=m1 if m1 is not None else len(machines),
        e0=F(e0),
    )


def test_valid_instance_has_no_errors():
    inst = _instance([_machine((1, 1), (None, F(1, 2)))], [1, 2], e0=F(1, 2))
    assert validate_instance(inst) == []


def test_validation_flags_gaps_and_bad_ratios():
    gap = MachineProfile(
        intervals=(
            SharedInterval(F(0), F(1), F(1)),
            SharedInterval(F(2), F(3), F(1, 2)),
        )
    )
    inst = _instance([gap], [1])
    assert any("expected 1" in e for e in validate_instance(inst))

    zero_ratio = _instance([_machine((1, 0))], [1])
    assert any("ratio 0" in e for e in validate_instance(zero_ratio))

    big_ratio = _instance([_machine((1, 2))], [1])
    assert any("outside (0, 1]" in e for e in validate_instance(big_ratio))


def test_validation_flags_instance_level_problems():
    inst = _instance([_machine((None, 1))], [1, 0])
    assert any("not positive" in e for e in validate_instance(inst))
    inst = _instance([_machine((None, 1))], [1], m1=2)
    assert any("m1=2" in e for e in validate_instance(inst))
    inst = _instance([_machine((None, 1))], [1], e0=F(3, 2))
    assert any("e0=3/2" in e for e in validate_instance(inst))
    assert any("no jobs" in e for e in validate_instance(_instance([_machine((None, 1))], [])))
    assert any("no machines" in e for e in validate_instance(_instance([], [1], m1=1)))


def test_validation_enforces_e0_on_the_bounded_prefix():
    low = _machine((None, F(1, 4)))
    inst = _instance([low], [1], m1=1, e0=F(1, 2))
    assert any("below e0" in e for e in validate_instance(inst))
    # the same machine after the bounded prefix is fine
    inst = _instance([_machine((None, F(1, 2))), low], [1], m1=1, e0=F(1, 2))
    assert validate_instance(inst) == []


def test_validation_rejects_intervals_after_an_unbounded_one():
    bad = MachineProfile(
        intervals=(
            SharedInterval(F(0), None, F(1, 2)),
            SharedInterval(F(1), F(2), F(1)),
        )
    )
    assert any("unbounded" in e for e in validate_instance(_instance([bad], [1])))


def test_evaluate_on_slowdown_machine():
    inst = _instance([_machine((1, 1), (None, F(1, 2)))], [1, 2], e0=F(1, 2))
    sched = evaluate(inst, [[0, 1]])
    assert sched.completions == (F(1), F(5))
    assert sched.makespan == F(5)
    assert sched.total_completion == F(6)


def test_evaluate_on_constant_ratio_machine():
    inst = _instance([_machine((None, F(3, 4)))], [2], e0=F(3, 4))
    sched = evaluate(inst, [[0]])
    assert sched.completions == (F(8, 3),)


def test_evaluate_requires_a_partition():
    inst = _instance([_machine((None, 1)), _machine((None, 1))], [1, 2])
    with pytest.raises(ValueError):
        evaluate(inst, [[0], []])
    with pytest.raises(ValueError):
        evaluate(inst, [[0, 1], [1]])
    with pytest.raises(ValueError):
        evaluate(inst, [[0, 1]])


def test_completions_increase_along_each_machine():
    rng = random.Random(11)
    for seed in range(30):
        inst = random_instance(RandomSpec(n=6, m=2, m1=1, e0=F(1, 2), seed=seed))
        order = list(range(6))
        rng.shuffle(order)
        cut = rng.randint(0, 6)
        assignment = [order[:cut], order[cut:]]
        sched = evaluate(inst, assignment)
        for machine_jobs in assignment:
            for a, b in zip(machine_jobs, machine_jobs[1:]):
                assert sched.completions[a] < sched.completions[b]


def test_evaluate_is_deterministic():
    inst = named_example("lptect_322")
    first = evaluate(inst, [[1, 2], [0]])
    second = evaluate(inst, [[1, 2], [0]])
    assert first == second


def test_scaling_jobs_and_breakpoints_scales_completions():
    for seed in range(20):
        inst = random_instance(RandomSpec(n=5, m=2, m1=1, e0=F(1, 3), seed=seed))
        c = F(7, 3)
        scaled = Instance(
            machines=tuple(
                MachineProfile(
                    intervals=tuple(
                        SharedInterval(
                            start=iv.start * c,
                            end=None if iv.end is None else iv.end * c,
                            ratio=iv.ratio,
                        )
                        for iv in mp.intervals
                    ),
                    machine_index=mp.machine_index,
                )
                for mp in inst.machines
            ),
            jobs=tuple(p * c for p in inst.jobs),
            m1=inst.m1,
            e0=inst.e0,
        )
        assignment = [[0, 2, 4], [1, 3]]
        base = evaluate(inst, assignment)
        big = evaluate(scaled, assignment)
        assert big.completions == tuple(x * c for x in base.completions)


def test_all_full_speed_machines_degenerate_to_prefix_sums():
    inst = _instance([MachineProfile(intervals=()), MachineProfile(intervals=())], [3, 1, 2])
    sched = evaluate(inst, [[0, 1], [2]])
    assert sched.completions == (F(3), F(4), F(2))


def test_objective_value_picks_the_right_field():
    inst = _instance([_machine((None, 1))], [1, 2])
    sched = evaluate(inst, [[0, 1]])
    assert objective_value(sched, Objective.MAKESPAN) == F(3)
    assert objective_value(sched, Objective.TOTAL_COMPLETION) == F(4)


def test_json_round_trip_is_bit_exact():
    for name in ("lptect_322", "spt_vs_sptect", "ls_bad"):
        inst = named_example(name)
        text = instance_to_json(inst)
        again = instance_from_json(text)
        assert again == inst
        assert instance_to_json(again) == text


def test_json_round_trip_on_random_instances():
    for seed in range(25):
        inst = random_instance(RandomSpec(n=4, m=3, m1=2, e0=F(2, 3), seed=seed))
        assert instance_from_json(instance_to_json(inst)) == inst


def test_json_rationals_serialize_as_integer_or_p_over_q():
    inst = named_example("lptect_322")
    text = instance_to_json(inst)
    assert '"3/4"' in text
    assert '"3"' in text
    assert '"inf"' in text


def test_json_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        instance_from_json("not json")
    with pytest.raises(ValueError):
        instance_from_json("[]")
    with pytest.raises(ValueError):
        instance_from_json('{"machines": [], "jobs": []}')
    good = instance_to_json(named_example("lptect_322"))
    with pytest.raises(ValueError):
        instance_from_json(good.replace('"3/4"', '"3/4/5"'))
    with pytest.raises(ValueError):
        instance_from_json(good.replace('"m1": 2', '"m1": "2"'))


def test_json_rejects_invalid_instances():
    # ratio above 1 parses but fails validation
    bad = instance_to_json(named_example("lptect_322")).replace('"3/4"', '"5/4"')
    with pytest.raises(ValueError):
        instance_from_json(bad)
