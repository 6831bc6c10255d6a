"""Command-line interface.

Subcommands map one-to-one onto the library: gen, moments, bounds, scale,
solve, pareto, hv, experiment.  Exit codes: 0 success, 1 usage error,
2 input parse failure, 3 invariant violation, 4 every experiment cell
failed.  Every subcommand is deterministic given its inputs and seed;
omitting --seed is an error for `experiment` and falls back to fresh
entropy (echoed to stderr) elsewhere.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import pipeline
from .core import (
    DegenerateObjectiveError,
    QuboFormatError,
    bits_from_string,
    evaluate,
    read_instance,
    read_objective_set,
    write_objective_set,
    MultiObjectiveSet,
)
from .moments import standardize, summarize
from .pareto import (
    SolutionRecord,
    averaged_hypervolume,
    build_protocol,
    non_dominated_filter,
)
from .problems import Family, GeneratorConfig, barabasi_albert, generate
from .roofdual import normalize_by_range, roof_dual_range
from .solve import SolveConfig, anneal

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_ALL_FAILED = 4


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    input parse failures and use 1 for usage."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise QuboFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    fresh = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    print(f"no --seed given; using generated seed {fresh}", file=sys.stderr)
    return fresh


def _cmd_gen(args) -> int:
    cfg_obj = _load_json(args.config)
    if args.seed is not None:
        cfg_obj = dict(cfg_obj, seed=args.seed)
    if "seed" not in cfg_obj:
        cfg_obj["seed"] = _resolve_seed(None)
    cfg = GeneratorConfig.from_json(cfg_obj)
    graph = barabasi_albert(
        cfg.n, cfg.attach_m,
        np.random.SeedSequence(cfg.seed, spawn_key=(0, 0)),
    )
    order = list(Family)
    instances = tuple(
        generate(f, graph,
                 np.random.SeedSequence(cfg.seed, spawn_key=(0, 1 + order.index(f))))
        for f in cfg.families
    )
    if len(instances) == 1:
        from .core import write_instance

        write_instance(instances[0], args.out)
    else:
        write_objective_set(MultiObjectiveSet(instances), args.out)
    print(f"wrote {len(instances)} objective(s) to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_moments(args) -> int:
    instance = read_instance(args.instance)
    _emit(summarize(instance, cross_check=args.verify).to_json())
    return EXIT_OK


def _cmd_bounds(args) -> int:
    instance = read_instance(args.instance)
    _emit(roof_dual_range(instance).to_json())
    return EXIT_OK


def _cmd_scale(args) -> int:
    mo_set = read_objective_set(args.objectives)
    if args.method == "standardize":
        scaled, reports = standardize(mo_set)
    else:
        scaled, reports = normalize_by_range(mo_set)
    write_objective_set(scaled, args.out)
    _emit([r.to_json() for r in reports])
    return EXIT_OK


def _cmd_solve(args) -> int:
    instance = read_instance(args.instance)
    cfg = SolveConfig(
        runs=args.runs,
        seed=_resolve_seed(args.seed),
        sweeps_per_temp=args.sweeps_per_temp,
        time_limit_ms=args.time_limit_ms,
    )
    outcome = anneal(instance, cfg)
    doc = outcome.to_json(cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    _emit(doc)
    return EXIT_OK


def _read_solutions(path, n: int):
    doc = _load_json(path)
    if isinstance(doc, dict) and "runs" in doc:
        rows = doc["runs"]
    elif isinstance(doc, list):
        rows = doc
    else:
        raise QuboFormatError(f"{path}: expected a solve outcome or a list of bits")
    bits = []
    for row in rows:
        s = row["bits"] if isinstance(row, dict) else row
        bits.append(bits_from_string(str(s), n))
    return bits


def _cmd_pareto(args) -> int:
    mo_set = read_objective_set(args.objectives)
    records = []
    for path in args.solutions:
        for bits in _read_solutions(path, mo_set.n):
            records.append(SolutionRecord(
                bits=bits,
                objectives=np.array([evaluate(o, bits) for o in mo_set]),
            ))
    front = non_dominated_filter(records)
    _emit({
        "records": [
            {
                "bits": "".join(str(int(b)) for b in r.bits),
                "objectives": [float(v) for v in r.objectives],
            }
            for r in front.records
        ]
    })
    return EXIT_OK


def _cmd_hv(args) -> int:
    doc = _load_json(args.fronts)
    if not isinstance(doc, dict) or "fronts" not in doc:
        raise QuboFormatError(f"{args.fronts}: expected an object with a 'fronts' list")
    fronts = [np.asarray(f, dtype=np.float64) for f in doc["fronts"]]
    proto = build_protocol(fronts, count=args.ref_points,
                           seed=_resolve_seed(args.seed))
    _emit([averaged_hypervolume(f, proto).to_json() for f in fronts])
    return EXIT_OK


def _cmd_experiment(args) -> int:
    if args.seed is None:
        print("experiment: --seed is required for reproducibility", file=sys.stderr)
        return EXIT_USAGE
    plan_obj = _load_json(args.plan)
    if not isinstance(plan_obj, dict):
        raise QuboFormatError(f"{args.plan}: plan must be a JSON object")
    overrides = {
        "runs": args.runs,
        "repetitions": args.reps,
        "ref_points": args.ref_points,
    }
    for key, val in overrides.items():
        if val is not None:
            plan_obj[key] = val
    try:
        plan = pipeline.plan_from_json(plan_obj, master_seed=args.seed)
    except KeyError as exc:
        raise QuboFormatError(f"{args.plan}: plan is missing required key {exc}") from None
    except ValueError as exc:
        print(f"moqubo: invalid plan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    report = pipeline.run_experiment(plan, jobs=jobs)
    paths = pipeline.write_report_files(report, args.out)
    print(pipeline.report_csv(report), end="")
    for name, path in paths.items():
        print(f"wrote {path}", file=sys.stderr)
    statuses = [c.status for c in report.cells.values()]
    if statuses and all(s != "ok" for s in statuses):
        return EXIT_ALL_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moqubo",
                     description="Multi-objective QUBO scaling toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate problem instances",
                       description="Generate family instances from a config file.")
    p.add_argument("config", help="generator config JSON")
    p.add_argument("--out", required=True, help="output instance file")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("moments", help="exact mean/variance of an instance")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--verify", action="store_true",
                   help="cross-check the variance against the quadruple-sum path")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("bounds", help="roof-dual range of an instance")
    p.add_argument("instance", help="instance JSON file")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("scale", help="rescale a multi-objective set")
    p.add_argument("objectives", help="multi-objective JSON file")
    p.add_argument("--method", choices=("standardize", "roof_dual"),
                   required=True)
    p.add_argument("--out", required=True, help="output multi-objective file")
    p.set_defaults(func=_cmd_scale)

    p = sub.add_parser("solve", help="simulated-annealing minimization")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sweeps-per-temp", type=int, default=4)
    p.add_argument("--time-limit-ms", type=int, default=None,
                   help="wall-clock budget per run (disables determinism)")
    p.add_argument("--out", default=None, help="also write the outcome JSON here")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("pareto", help="filter solutions to the non-dominated front")
    p.add_argument("--objectives", required=True, help="multi-objective JSON file")
    p.add_argument("solutions", nargs="+",
                   help="solve outcome files (or JSON lists of bit strings)")
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("hv", help="averaged hypervolume of solution fronts")
    p.add_argument("fronts", help='JSON file: {"fronts": [[[f1, f2], ...], ...]}')
    p.add_argument("--ref-points", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_hv)

    p = sub.add_parser("experiment", help="run a full experiment plan")
    p.add_argument("plan", help="experiment plan JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (required)")
    p.add_argument("--jobs", type=int, default=None,
                   help="parallel combination workers (default: cpu count)")
    p.add_argument("--runs", type=int, default=None, help="override solver runs")
    p.add_argument("--reps", type=int, default=None, help="override repetitions")
    p.add_argument("--ref-points", type=int, default=None,
                   help="override reference-point count")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"moqubo: {exc.filename or 'file'}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuboFormatError as exc:
        print(f"moqubo: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(
            f"moqubo: parse error: invalid JSON at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return EXIT_PARSE
    except (DegenerateObjectiveError, ValueError) as exc:
        print(f"moqubo: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
