"""Command line front end.

Subcommands: solve (one algorithm, JSON report), compare (all algorithms
against the exact optimum, CSV), experiment (seeded random trials with bound
checks, CSV), gadget (emit instance JSON).  Exit codes: 0 success, 2 bad
input, 3 instance too large for exact enumeration.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import generators, heuristics, schemes
from .model import (
    Instance,
    Objective,
    Schedule,
    instance_from_json,
    instance_to_json,
    objective_value,
)
from .oracle import OracleLimitError, exact_optimal

HEURISTICS = {
    "ls": heuristics.ls,
    "lpt": heuristics.lpt,
    "ls-ect": heuristics.ls_ect,
    "lpt-ect": heuristics.lpt_ect,
    "spt": heuristics.spt,
    "spt-ect": heuristics.spt_ect,
}

ALGORITHMS = tuple(HEURISTICS) + ("scheme-makespan", "scheme-totaltime", "oracle")


class InputError(Exception):
    pass


def _fail(kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return 2 if kind == "input" else 3


def _read_instance(path: str) -> Instance:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return instance_from_json(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: cannot parse {text!r} as a rational") from exc


def _objective(args) -> Objective:
    return Objective.MAKESPAN if args.obj == "makespan" else Objective.TOTAL_COMPLETION


def _fmt(value: Fraction, decimal: bool) -> str:
    return repr(float(value)) if decimal else str(value)


def _run_algorithm(inst: Instance, args, objective: Objective) -> tuple[Schedule, dict]:
    alg = args.alg
    params: dict = {}
    if alg in HEURISTICS:
        return HEURISTICS[alg](inst), params
    if alg == "scheme-makespan":
        if args.d is not None:
            d = args.d
        elif args.epsilon is not None:
            eps = _parse_fraction(args.epsilon, "--epsilon")
            d = schemes.compute_d(inst.m, inst.m1, inst.e0, eps, inst.n)
            params["epsilon"] = str(eps)
        else:
            raise InputError("scheme-makespan needs --epsilon or --d")
        params["d"] = d
        try:
            return schemes.makespan_scheme(inst, d), params
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if alg == "scheme-totaltime":
        if args.epsilon is None:
            raise InputError("scheme-totaltime needs --epsilon")
        eps = _parse_fraction(args.epsilon, "--epsilon")
        params["epsilon"] = str(eps)
        try:
            return schemes.totaltime_scheme(inst, eps), params
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if alg == "oracle":
        result = exact_optimal(inst, objective)
        params["states_explored"] = result.states_explored
        return result.best, params
    raise InputError(f"unknown algorithm {alg!r}")


def cmd_solve(args) -> int:
    inst = _read_instance(args.instance)
    objective = _objective(args)
    started = time.perf_counter()
    schedule, params = _run_algorithm(inst, args, objective)
    elapsed = time.perf_counter() - started
    digest = hashlib.sha256(instance_to_json(inst).encode("utf-8")).hexdigest()
    report = {
        "instance_digest": digest,
        "algorithm": args.alg,
        "objective": args.obj,
        "value": _fmt(objective_value(schedule, objective), args.decimal),
        "wall_time_s": round(elapsed, 6),
        "completions": [_fmt(c, args.decimal) for c in schedule.completions],
        "assignment": [[j + 1 for j in seq] for seq in schedule.assignment],
    }
    if params:
        report["params"] = params
    print(json.dumps(report, indent=2))
    return 0


def cmd_compare(args) -> int:
    inst = _read_instance(args.instance)
    objective = _objective(args)
    epsilon = _parse_fraction(args.epsilon, "--epsilon") if args.epsilon else None

    if objective is Objective.MAKESPAN:
        names = ["ls", "lpt", "ls-ect", "lpt-ect"]
    else:
        names = ["spt", "spt-ect"]
    runs: list[tuple[str, Fraction]] = [
        (name, objective_value(HEURISTICS[name](inst), objective)) for name in names
    ]
    if epsilon is not None:
        if objective is Objective.MAKESPAN:
            d = schemes.compute_d(inst.m, inst.m1, inst.e0, epsilon, inst.n)
            runs.append(
                ("scheme-makespan", objective_value(schemes.makespan_scheme(inst, d), objective))
            )
        elif inst.m1 >= inst.m - 1:
            runs.append(
                (
                    "scheme-totaltime",
                    objective_value(schemes.totaltime_scheme(inst, epsilon), objective),
                )
            )
    oracle_value: Optional[Fraction] = None
    try:
        oracle_value = exact_optimal(inst, objective).objective_value
    except OracleLimitError:
        pass
    if oracle_value is not None:
        runs.append(("oracle", oracle_value))

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["algorithm", "value", "ratio_to_oracle"])
    for name, value in runs:
        if oracle_value is None:
            ratio = "unavailable"
        else:
            ratio = _fmt(value / oracle_value, args.decimal)
        writer.writerow([name, _fmt(value, args.decimal), ratio])
    return 0


def cmd_experiment(args) -> int:
    e0 = _parse_fraction(args.e0, "--e0")
    epsilon = _parse_fraction(args.epsilon, "--epsilon") if args.epsilon else None
    objective = _objective(args)
    if args.trials < 0:
        raise InputError("--trials must be nonnegative")

    if objective is Objective.MAKESPAN:
        names = ["ls", "lpt", "ls-ect", "lpt-ect"]
        if epsilon is not None:
            names.append("scheme-makespan")
    else:
        names = ["spt", "spt-ect"]
        if epsilon is not None and args.m1 >= args.m - 1:
            names.append("scheme-totaltime")

    if args.with_oracle and args.trials > 0:
        # fail fast instead of mid-run
        probe = generators.random_instance(
            generators.RandomSpec(
                n=args.n, m=args.m, m1=args.m1, e0=e0, p_max=args.p_max,
                min_breakpoints=args.min_breakpoints, max_breakpoints=args.max_breakpoints,
                seed=args.seed,
            )
        )
        exact_optimal(probe, objective)

    rows = []
    for trial in range(args.trials):
        seed = args.seed + trial
        inst = generators.random_instance(
            generators.RandomSpec(
                n=args.n, m=args.m, m1=args.m1, e0=e0, p_max=args.p_max,
                min_breakpoints=args.min_breakpoints, max_breakpoints=args.max_breakpoints,
                seed=seed,
            )
        )
        opt: Optional[Fraction] = None
        if args.with_oracle:
            opt = exact_optimal(inst, objective).objective_value
        for name in names:
            if name == "scheme-makespan":
                d = schemes.compute_d(inst.m, inst.m1, inst.e0, epsilon, inst.n)
                value = objective_value(schemes.makespan_scheme(inst, d), objective)
            elif name == "scheme-totaltime":
                value = objective_value(schemes.totaltime_scheme(inst, epsilon), objective)
            else:
                value = objective_value(HEURISTICS[name](inst), objective)
            bound = heuristics.guarantee_ratio(
                name, n=inst.n, m=inst.m, m1=inst.m1, e0=inst.e0, epsilon=epsilon
            )
            ratio = value / opt if opt else None
            satisfied = ""
            if bound is not None and ratio is not None:
                satisfied = "true" if ratio <= bound else "false"
            rows.append(
                [
                    seed,
                    name,
                    str(value),
                    str(opt) if opt is not None else "",
                    str(ratio) if ratio is not None else "",
                    str(bound) if bound is not None else "",
                    satisfied,
                ]
            )

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        ["seed", "algorithm", "value", "oracle_value", "ratio", "bound", "bound_satisfied"]
    )
    writer.writerows(rows)
    return 0


def cmd_gadget(args) -> int:
    if args.kind in ("partition-makespan", "partition-totaltime"):
        try:
            sizes = [int(part) for part in args.a.split(",") if part.strip() != ""]
        except ValueError as exc:
            raise InputError(f"--a: cannot parse {args.a!r} as comma-separated integers") from exc
        build = (
            generators.partition_gadget_makespan
            if args.kind == "partition-makespan"
            else generators.partition_gadget_totaltime
        )
        try:
            inst = build(sizes, args.f)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    elif args.kind == "named":
        kwargs = {}
        if args.e0 is not None:
            kwargs["e0"] = _parse_fraction(args.e0, "--e0")
        if args.x is not None:
            kwargs["x"] = _parse_fraction(args.x, "--x")
        if args.alpha is not None:
            kwargs["alpha"] = _parse_fraction(args.alpha, "--alpha")
        try:
            inst = generators.named_example(args.name, **kwargs)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        spec = generators.RandomSpec(
            n=args.n, m=args.m, m1=args.m1 if args.m1 is not None else args.m,
            e0=_parse_fraction(args.e0, "--e0") if args.e0 is not None else Fraction(1, 2),
            p_max=args.p_max, min_breakpoints=args.min_breakpoints,
            max_breakpoints=args.max_breakpoints, seed=args.seed,
        )
        try:
            inst = generators.random_instance(spec)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    print(instance_to_json(inst))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharedsched",
        description="Schedule jobs on machines that only lend part of their capacity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one algorithm on an instance file")
    solve.add_argument("instance", help="instance JSON path, or - for stdin")
    solve.add_argument("--alg", required=True, choices=ALGORITHMS)
    solve.add_argument("--obj", required=True, choices=["makespan", "totaltime"])
    solve.add_argument("--epsilon", help="accuracy parameter for the schemes, e.g. 1/4")
    solve.add_argument("--d", type=int, help="enumeration depth for scheme-makespan")
    solve.add_argument("--decimal", action="store_true", help="print floats instead of p/q")
    solve.set_defaults(func=cmd_solve)

    compare = sub.add_parser("compare", help="run every algorithm and compare to the optimum")
    compare.add_argument("instance", help="instance JSON path, or - for stdin")
    compare.add_argument("--obj", required=True, choices=["makespan", "totaltime"])
    compare.add_argument("--epsilon", help="also run the matching scheme")
    compare.add_argument("--decimal", action="store_true")
    compare.set_defaults(func=cmd_compare)

    experiment = sub.add_parser("experiment", help="seeded random trials with bound checks")
    experiment.add_argument("--n", type=int, required=True)
    experiment.add_argument("--m", type=int, required=True)
    experiment.add_argument("--m1", type=int, required=True)
    experiment.add_argument("--e0", required=True)
    experiment.add_argument("--trials", type=int, required=True)
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--obj", default="makespan", choices=["makespan", "totaltime"])
    experiment.add_argument("--epsilon")
    experiment.add_argument("--with-oracle", action="store_true")
    experiment.add_argument("--p-max", type=int, default=10)
    experiment.add_argument("--min-breakpoints", type=int, default=0)
    experiment.add_argument("--max-breakpoints", type=int, default=3)
    experiment.set_defaults(func=cmd_experiment)

    gadget = sub.add_parser("gadget", help="emit an instance as JSON")
    gsub = gadget.add_subparsers(dest="kind", required=True)
    for kind in ("partition-makespan", "partition-totaltime"):
        g = gsub.add_parser(kind, help="two-machine equal-split gadget")
        g.add_argument("--a", required=True, help="comma-separated integer job sizes")
        g.add_argument("--f", type=int, required=True, help="slowdown factor > 1")
        g.set_defaults(func=cmd_gadget)
    named = gsub.add_parser("named", help="worked example by name")
    named.add_argument("name", choices=generators.NAMED_EXAMPLES)
    named.add_argument("--e0")
    named.add_argument("--x")
    named.add_argument("--alpha")
    named.set_defaults(func=cmd_gadget)
    rand = gsub.add_parser("random", help="seeded random instance")
    rand.add_argument("--seed", type=int, default=0)
    rand.add_argument("--n", type=int, required=True)
    rand.add_argument("--m", type=int, required=True)
    rand.add_argument("--m1", type=int)
    rand.add_argument("--e0")
    rand.add_argument("--p-max", type=int, default=10)
    rand.add_argument("--min-breakpoints", type=int, default=0)
    rand.add_argument("--max-breakpoints", type=int, default=3)
    rand.set_defaults(func=cmd_gadget)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        return _fail("input", str(exc))
    except OracleLimitError as exc:
        return _fail("limit", str(exc))


if __name__ == "__main__":
    sys.exit(main())
