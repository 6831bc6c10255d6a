"""End-to-end experiment: generate problem families, scale, scalarize,
solve repeatedly, and score every method with a shared averaged-hypervolume
protocol.

One master seed fans out to every random decision through SeedSequence
spawn keys: domain 0 covers generation (graph, then one stream per
family), domain 1 the solver (keyed by combination bitmask, canonical
method index, repetition, run), domain 2 the reference points (keyed by
combination bitmask only, so every method and repetition of a
combination sees identical reference points).  Solutions are always
evaluated under the original, unscaled objectives; scaling only steers
the search.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations as subsets

import numpy as np

from .core import (
    DegenerateObjectiveError,
    MultiObjectiveSet,
    QuboInstance,
    evaluate,
    scalarize,
)
from .moments import standardize, std_uniform
from .pareto import (
    FrontSet,
    SolutionRecord,
    averaged_hypervolume,
    build_protocol,
    non_dominated_filter,
)
from .problems import Family, barabasi_albert, generate
from .roofdual import normalize_by_range, roof_dual_range
from .solve import SolveConfig, anneal, brute_force

METHODS = ("original", "roof_dual", "standardize")

_GEN_DOMAIN, _SOLVE_DOMAIN, _REF_DOMAIN = 0, 1, 2


def _spawn(master: int, *key: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))


def _seed_int(master: int, *key: int) -> int:
    return int(_spawn(master, *key).generate_state(1, np.uint64)[0])


def all_combinations(families: tuple[Family, ...]) -> list[tuple[Family, ...]]:
    """Every subset of size >= 2, ordered by size then family order."""
    out = []
    for size in range(2, len(families) + 1):
        out.extend(subsets(families, size))
    return out


def combination_mask(combo: tuple[Family, ...]) -> int:
    order = list(Family)
    return sum(1 << order.index(Family(f)) for f in combo)


@dataclass(frozen=True)
class ExperimentPlan:
    """Everything needed to reproduce one experiment sweep."""

    n: int
    attach_m: int
    master_seed: int
    methods: tuple[str, ...] = METHODS
    families: tuple[Family, ...] = tuple(Family)
    combinations: tuple[tuple[Family, ...], ...] | None = None
    repetitions: int = 20
    solver: str = "anneal"
    runs: int = 20
    sweeps_per_temp: int = 4
    ref_points: int = 10000

    def __post_init__(self):
        if not self.methods:
            raise ValueError("plan must list at least one scaling method")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
        if self.solver not in ("anneal", "brute_force"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.repetitions < 1 or self.runs < 1 or self.ref_points < 1:
            raise ValueError("repetitions, runs, and ref_points must be >= 1")
        object.__setattr__(self, "families",
                           tuple(Family(f) for f in self.families))
        combos = self.combinations
        if combos is None:
            combos = tuple(all_combinations(self.families))
        else:
            combos = tuple(tuple(Family(f) for f in c) for c in combos)
            for c in combos:
                if len(c) < 2:
                    raise ValueError(f"combination {c} has fewer than 2 objectives")
        object.__setattr__(self, "combinations", combos)
        object.__setattr__(self, "methods", tuple(self.methods))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "attach_m": self.attach_m,
            "master_seed": self.master_seed,
            "methods": list(self.methods),
            "families": [f.value for f in self.families],
            "combinations": [[f.value for f in c] for c in self.combinations],
            "repetitions": self.repetitions,
            "solver": self.solver,
            "runs": self.runs,
            "sweeps_per_temp": self.sweeps_per_temp,
            "ref_points": self.ref_points,
        }


def plan_from_json(obj: dict, master_seed: int | None = None) -> ExperimentPlan:
    seed = obj.get("master_seed") if master_seed is None else master_seed
    if seed is None:
        raise ValueError("experiment plan needs a master seed")
    kwargs = dict(
        n=int(obj["n"]),
        attach_m=int(obj.get("attach_m", 2)),
        master_seed=int(seed),
        methods=tuple(obj.get("methods", METHODS)),
        families=tuple(Family(str(f).lower()) for f in obj.get(
            "families", [f.value for f in Family])),
        repetitions=int(obj.get("repetitions", 20)),
        solver=str(obj.get("solver", "anneal")),
        runs=int(obj.get("runs", 20)),
        sweeps_per_temp=int(obj.get("sweeps_per_temp", 4)),
        ref_points=int(obj.get("ref_points", 10000)),
    )
    if "combinations" in obj:
        kwargs["combinations"] = tuple(
            tuple(Family(str(f).lower()) for f in c) for c in obj["combinations"]
        )
    return ExperimentPlan(**kwargs)


@dataclass
class CellResult:
    """One (combination, method) cell of the report."""

    combination: tuple[Family, ...]
    method: str
    status: str = "ok"                      # "ok" or "failed"
    error: str = ""
    hv_mean: float | None = None            # mean over repetitions
    hv_std: float | None = None             # std over repetitions (population)
    hv_ref_std_mean: float | None = None    # mean over reps of per-protocol std
    rep_means: list[float] = field(default_factory=list)
    scaling: list[dict] = field(default_factory=list)
    front_sizes: list[int] = field(default_factory=list)
    fronts: list[FrontSet] = field(default_factory=list)  # one per repetition


@dataclass
class ScalingRow:
    """One line of the range-versus-sigma scaling summary."""

    label: str
    roof_dual_width: float
    sigma: float


@dataclass
class ExperimentReport:
    plan: ExperimentPlan
    cells: dict[tuple[int, str], CellResult]
    scaling_rows: list[ScalingRow]

    def cell(self, combo, method: str) -> CellResult:
        return self.cells[(combination_mask(combo), method)]


def scaling_summary(mo_set: MultiObjectiveSet) -> list[ScalingRow]:
    """Roof-dual range width and uniform standard deviation per objective."""
    rows = []
    for obj in mo_set:
        est = roof_dual_range(obj)
        rows.append(ScalingRow(label=obj.label or "q",
                               roof_dual_width=est.width,
                               sigma=std_uniform(obj)))
    return rows


def _scale_objectives(mo_set: MultiObjectiveSet, method: str):
    if method == "original":
        return mo_set, [
            {"index": k, "method": "original", "scale": 1.0}
            for k in range(mo_set.m)
        ]
    if method == "roof_dual":
        scaled, reports = normalize_by_range(mo_set)
    else:
        scaled, reports = standardize(mo_set)
    return scaled, [r.to_json() for r in reports]


def _solve_scalarized(scalarized: QuboInstance, plan: ExperimentPlan,
                      mask: int, method_idx: int, rep: int) -> list[np.ndarray]:
    if plan.solver == "brute_force":
        bits, _ = brute_force(scalarized)
        return [bits]
    cfg = SolveConfig(
        runs=plan.runs,
        seed=_seed_int(plan.master_seed, _SOLVE_DOMAIN, mask, method_idx, rep),
        sweeps_per_temp=plan.sweeps_per_temp,
    )
    return anneal(scalarized, cfg).all_solutions


def _run_combination(plan: ExperimentPlan, instances: dict[Family, QuboInstance],
                     combo: tuple[Family, ...], log) -> list[CellResult]:
    mask = combination_mask(combo)
    originals = MultiObjectiveSet(tuple(instances[f] for f in combo))
    cells: list[CellResult] = []
    fronts: dict[str, list[FrontSet]] = {}
    for method in plan.methods:
        cell = CellResult(combination=combo, method=method)
        cells.append(cell)
        method_idx = METHODS.index(method)
        try:
            scaled, cell.scaling = _scale_objectives(originals, method)
        except DegenerateObjectiveError as exc:
            cell.status = "failed"
            cell.error = str(exc)
            log(f"cell {mask:04b}/{method}: FAILED ({exc})")
            continue
        scalarized = scalarize(scaled, [1.0] * scaled.m)
        method_fronts = []
        for rep in range(plan.repetitions):
            solutions = _solve_scalarized(scalarized, plan, mask, method_idx, rep)
            records = [
                SolutionRecord(
                    bits=bits,
                    objectives=np.array([evaluate(o, bits) for o in originals]),
                )
                for bits in solutions
            ]
            front = non_dominated_filter(records)
            method_fronts.append(front)
            cell.front_sizes.append(len(front))
        fronts[method] = method_fronts
        cell.fronts = method_fronts

    ok_fronts = [f for m in fronts.values() for f in m if len(f)]
    if ok_fronts:
        proto = build_protocol(
            ok_fronts,
            count=plan.ref_points,
            seed=_seed_int(plan.master_seed, _REF_DOMAIN, mask),
        )
        for cell in cells:
            if cell.status != "ok":
                continue
            means, ref_stds = [], []
            for front in fronts[cell.method]:
                res = averaged_hypervolume(front, proto)
                means.append(res.mean)
                ref_stds.append(res.std)
            arr = np.array(means)
            cell.rep_means = [float(v) for v in means]
            cell.hv_mean = float(arr.mean())
            cell.hv_std = float(arr.std())
            cell.hv_ref_std_mean = float(np.mean(ref_stds))
            log(f"cell {mask:04b}/{cell.method}: hv_mean={cell.hv_mean:.6g} "
                f"hv_std={cell.hv_std:.6g}")
    return cells


def run_experiment(plan: ExperimentPlan, jobs: int = 1,
                   log=None) -> ExperimentReport:
    """Execute the full sweep described by the plan.

    Scaling degeneracies mark single cells as failed without aborting the
    sweep.  Identical plans (including the master seed) produce identical
    reports regardless of ``jobs``.
    """
    if log is None:
        def log(msg):
            print(msg, file=sys.stderr)

    graph = barabasi_albert(plan.n, plan.attach_m, _spawn(plan.master_seed, _GEN_DOMAIN, 0))
    order = list(Family)
    instances = {
        f: generate(f, graph, _spawn(plan.master_seed, _GEN_DOMAIN, 1 + order.index(f)))
        for f in plan.families
    }
    base_set = MultiObjectiveSet(tuple(instances[f] for f in plan.families)) \
        if len(plan.families) >= 2 else None
    scaling_rows = scaling_summary(base_set) if base_set is not None else []

    cells: dict[tuple[int, str], CellResult] = {}
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_combination, plan, instances, combo, log)
                for combo in plan.combinations
            ]
            results = [f.result() for f in futures]
    else:
        results = [
            _run_combination(plan, instances, combo, log)
            for combo in plan.combinations
        ]
    for combo_cells in results:
        for cell in combo_cells:
            cells[(combination_mask(cell.combination), cell.method)] = cell
    return ExperimentReport(plan=plan, cells=cells, scaling_rows=scaling_rows)


# --- serialization ----------------------------------------------------------


def _fmt(v: float | None) -> str:
    return "" if v is None else f"{v:.6g}"


def report_csv(report: ExperimentReport) -> str:
    """Table-style CSV: one row per combination, one mean/std pair per method."""
    plan = report.plan
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [f.value for f in plan.families]
    for m in plan.methods:
        header += [f"{m}_mean", f"{m}_std"]
    writer.writerow(header)
    for combo in plan.combinations:
        row = [str(int(f in combo)) for f in plan.families]
        for m in plan.methods:
            cell = report.cell(combo, m)
            if cell.status != "ok" or cell.hv_mean is None:
                row += ["FAILED", "FAILED"]
            else:
                row += [_fmt(cell.hv_mean), _fmt(cell.hv_std)]
        writer.writerow(row)
    return buf.getvalue()


def scaling_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["qubo", "roof_dual_range", "std_deviation"])
    for row in report.scaling_rows:
        writer.writerow([row.label, _fmt(row.roof_dual_width), _fmt(row.sigma)])
    return buf.getvalue()


def _round6(v):
    if isinstance(v, float):
        return float(f"{v:.6g}")
    if isinstance(v, list):
        return [_round6(x) for x in v]
    if isinstance(v, dict):
        return {k: _round6(x) for k, x in v.items()}
    return v


def report_json(report: ExperimentReport) -> dict:
    cells = []
    for combo in report.plan.combinations:
        for m in report.plan.methods:
            cell = report.cell(combo, m)
            cells.append(_round6({
                "combination": [f.value for f in combo],
                "method": m,
                "status": cell.status,
                "error": cell.error,
                "hv_mean": cell.hv_mean,
                "hv_std_repetitions": cell.hv_std,
                "hv_std_ref_points_mean": cell.hv_ref_std_mean,
                "repetition_means": cell.rep_means,
                "front_sizes": cell.front_sizes,
                "scaling": cell.scaling,
            }))
    return {
        "plan": report.plan.to_json(),
        "cells": cells,
        "scaling_summary": [
            _round6({
                "qubo": r.label,
                "roof_dual_range": r.roof_dual_width,
                "std_deviation": r.sigma,
            })
            for r in report.scaling_rows
        ],
    }


def write_report_files(report: ExperimentReport, out_dir) -> dict[str, str]:
    """Write report.csv, report.json, and scaling.csv; returns the paths."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    paths["report.csv"] = os.path.join(out_dir, "report.csv")
    with open(paths["report.csv"], "w", encoding="utf-8") as fh:
        fh.write(report_csv(report))
    paths["report.json"] = os.path.join(out_dir, "report.json")
    with open(paths["report.json"], "w", encoding="utf-8") as fh:
        json.dump(report_json(report), fh, indent=2)
        fh.write("\n")
    paths["scaling.csv"] = os.path.join(out_dir, "scaling.csv")
    with open(paths["scaling.csv"], "w", encoding="utf-8") as fh:
        fh.write(scaling_csv(report))
    return paths
