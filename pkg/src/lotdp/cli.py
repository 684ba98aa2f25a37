"""Command line driver.

Subcommands: ``solve`` an instance file, ``verify`` a file (or a seeded random
batch) against the brute-force oracles, ``gen`` a random instance, ``bench``
the table sizes and wall time across a parameter sweep.

Exit codes: 0 success, 1 bad input or a size-guard refusal, 2 infeasible
instance, 3 solver/oracle disagreement.  The environment variable
``LOTDP_MAX_CELLS`` caps the number of table cells any single grid may use.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, replace

from .dp import AGGREGATED, DUPLICATION, SolveReport, solve, solve_multi
from .errors import (
    InfeasibleInstanceError,
    InvalidInstanceError,
    LotSizingError,
    ResourceLimitError,
    SchemaError,
)
from .generate import bench_instance, random_instance
from .model import (
    MULTI,
    SINGLE,
    Instance,
    instance_from_json,
    instance_to_json,
    rational_to_json,
    solution_cost,
    solution_to_json,
    validate_instance,
)
from .oracle import grid_oracle, structural_oracle

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_MISMATCH = 3

MAX_VERIFY_SUPPLIERS = 8


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by the subcommands after flag parsing."""

    max_cells: int | None


def _run_config() -> RunConfig:
    raw = os.environ.get("LOTDP_MAX_CELLS")
    if raw is None:
        return RunConfig(max_cells=None)
    try:
        value = int(raw)
        if value < 1:
            raise ValueError
    except ValueError:
        raise SchemaError(f"LOTDP_MAX_CELLS must be a positive integer, got {raw!r}")
    return RunConfig(max_cells=value)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    return instance_from_json(raw)


def _check_instance(inst: Instance) -> int | None:
    """Map validation problems to an exit code, or None when the instance is fine."""
    report = validate_instance(inst)
    if report.ok:
        return None
    if report.infeasible_demand and len(report.violations) == 1:
        return _fail(report.violations[0].message, EXIT_INFEASIBLE)
    for v in report.violations:
        print(f"error: {v.message}", file=sys.stderr)
    return EXIT_INPUT


def _write_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def report_to_json(report: SolveReport) -> dict:
    return {
        "best_H": report.best_H,
        "objective": rational_to_json(report.solution.objective),
        "elapsed_seconds": report.elapsed_seconds,
        "table_cells_filled": report.table_cells_filled,
        "kind": report.kind,
        "per_H": [
            {
                "H": t.H,
                "objective": None if t.objective is None else rational_to_json(t.objective),
                "cells": t.cells,
                "micros": t.micros,
            }
            for t in report.trace
        ],
    }


def trace_to_csv(report: SolveReport) -> str:
    lines = ["H,phi_nP_num,phi_nP_den,cells,micros"]
    for t in report.trace:
        num = "" if t.objective is None else t.objective.numerator
        den = "" if t.objective is None else t.objective.denominator
        lines.append(f"{t.H},{num},{den},{t.cells},{t.micros}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    cfg = _run_config()
    inst = _load_instance(args.path)
    if args.mode:
        inst = replace(inst, mode=args.mode)
    code = _check_instance(inst)
    if code is not None:
        return code
    if inst.mode == MULTI:
        report = solve_multi(inst, max_cells=cfg.max_cells)
    else:
        report = solve(inst, max_cells=cfg.max_cells)
    # audit before writing anything: the stored objective must survive an
    # independent recomputation
    if solution_cost(inst, report.solution) != report.solution.objective:
        return _fail("internal audit failed: objective does not recompute", EXIT_INPUT)
    _write_text(
        json.dumps(solution_to_json(report.solution, approx=args.pretty), indent=2) + "\n",
        args.out,
    )
    print(json.dumps(report_to_json(report), indent=2), file=sys.stderr)
    if args.trace:
        sys.stderr.write(trace_to_csv(report))
    return EXIT_OK


def _verify_one(inst: Instance, cfg: RunConfig) -> tuple[list[tuple[str, object]], bool]:
    """Run every applicable solver; return labeled objectives and agreement."""
    results: list[tuple[str, object]] = []
    if inst.mode == MULTI:
        results.append(("aggregated", solve_multi(inst, max_cells=cfg.max_cells).solution))
        results.append(
            ("duplication", solve_multi(inst, strategy=DUPLICATION, max_cells=cfg.max_cells).solution)
        )
    else:
        results.append(("dp", solve(inst, max_cells=cfg.max_cells).solution))
        results.append(("structural", structural_oracle(inst)))
        if inst.n <= 3 and inst.P <= 12 and inst.c_hold <= 2:
            results.append(("grid", grid_oracle(inst, inst.n)))
    objectives = {sol.objective for _, sol in results}
    return results, len(objectives) == 1


def _print_mismatch(results) -> None:
    print("disagreement:", file=sys.stderr)
    for name, sol in results:
        print(f"  {name}: objective {sol.objective}", file=sys.stderr)
        for d in sol.deliveries:
            print(f"    supplier {d.supplier_index}: {d.volume}", file=sys.stderr)


def cmd_verify(args) -> int:
    cfg = _run_config()
    if args.path is None and not args.seed_batch:
        return _fail("verify needs an instance file or --seed-batch N", EXIT_INPUT)

    if args.seed_batch:
        rng = random.Random(args.seed)
        disagreements = 0
        for i in range(args.seed_batch):
            inst = random_instance(rng)
            results, agree = _verify_one(inst, cfg)
            if not agree:
                disagreements += 1
                print(f"instance {i}: {json.dumps(instance_to_json(inst))}", file=sys.stderr)
                _print_mismatch(results)
        print(f"{args.seed_batch - disagreements}/{args.seed_batch} agree")
        return EXIT_OK if disagreements == 0 else EXIT_MISMATCH

    inst = _load_instance(args.path)
    code = _check_instance(inst)
    if code is not None:
        return code
    if inst.n > MAX_VERIFY_SUPPLIERS:
        return _fail(
            f"verify enumerates 4**n assignments and refuses n > {MAX_VERIFY_SUPPLIERS}",
            EXIT_INPUT,
        )
    results, agree = _verify_one(inst, cfg)
    for name, sol in results:
        print(f"{name}: {sol.objective}")
    if not agree:
        _print_mismatch(results)
        return EXIT_MISMATCH
    print("agreement: yes")
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    inst = random_instance(
        rng,
        n=args.n,
        p_max=args.pmax,
        c_max=args.cmax,
        bound_max=args.bound_max,
        alpha_max=args.alpha_max,
        beta_max=args.beta_max,
        mode=args.mode,
        infeasible=args.infeasible,
    )
    text = json.dumps(instance_to_json(inst), indent=2, sort_keys=True) + "\n"
    _write_text(text, args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _run_config()
    if args.values:
        try:
            values = [int(v) for v in args.values.split(",")]
        except ValueError:
            raise SchemaError(f"--values must be comma-separated integers, got {args.values!r}")
    else:
        values = {"P": [50, 100, 200], "n": [2, 4, 8], "c": [1, 2, 3]}[args.sweep]
    rows = ["n,P,c_hold,cells,wall_micros,objective_num,objective_den"]
    for value in values:
        n, P, c_hold = 5, 60, 1
        if args.sweep == "P":
            P = value
        elif args.sweep == "n":
            n = value
        else:
            c_hold = value
        rng = random.Random(f"{args.seed}:{n}:{P}:{c_hold}")
        inst = bench_instance(rng, n, P, c_hold)
        report = solve(inst, max_cells=cfg.max_cells)
        obj = report.solution.objective
        rows.append(
            f"{n},{P},{c_hold},{report.table_cells_filled},"
            f"{int(report.elapsed_seconds * 1_000_000)},{obj.numerator},{obj.denominator}"
        )
    _write_text("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lotdp",
        description="Exact procurement lot-sizing: fixed-plus-linear delivery "
        "costs, quadratic holding, two-sided volume limits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("path", help="instance JSON file")
    p_solve.add_argument("--mode", choices=[SINGLE, MULTI], help="override the instance mode")
    p_solve.add_argument("--out", help="write the solution JSON here instead of stdout")
    p_solve.add_argument("--trace", action="store_true", help="emit a per-H CSV trace on stderr")
    p_solve.add_argument("--pretty", action="store_true", help="add decimal approximations")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="cross-check solvers and oracles")
    p_verify.add_argument("path", nargs="?", help="instance JSON file")
    p_verify.add_argument("--seed-batch", type=int, metavar="N", help="verify N random instances")
    p_verify.add_argument("--seed", type=int, default=0, help="seed for --seed-batch")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance")
    p_gen.add_argument("--n", type=int, help="supplier count (default: random 1..4)")
    p_gen.add_argument("--pmax", type=int, default=20, help="largest demand to draw")
    p_gen.add_argument("--cmax", type=int, default=3, help="largest holding rate to draw")
    p_gen.add_argument("--bound-max", type=int, default=12, help="largest volume bound to draw")
    p_gen.add_argument("--alpha-max", type=int, default=10)
    p_gen.add_argument("--beta-max", type=int, default=10)
    p_gen.add_argument("--mode", choices=[SINGLE, MULTI], default=SINGLE)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--infeasible", action="store_true", help="draw demand above capacity")
    p_gen.add_argument("--out", help="write here instead of stdout")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="table sizes and wall time across a sweep")
    p_bench.add_argument("--sweep", choices=["P", "n", "c"], required=True)
    p_bench.add_argument("--values", help="comma-separated sweep values (optional)")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", help="write the CSV here instead of stdout")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except InvalidInstanceError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except InfeasibleInstanceError as exc:
        return _fail(str(exc), EXIT_INFEASIBLE)
    except ResourceLimitError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except LotSizingError as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
