import numpy as np
import pytest

from moqubo.core import MultiObjectiveSet, QuboInstance, evaluate, scalarize, symmetrize
from moqubo.moments import standardize, std_uniform
from moqubo.pipeline import (
    ExperimentPlan,
    _run_combination,
    all_combinations,
    combination_mask,
    plan_from_json,
    report_csv,
    report_json,
    run_experiment,
    scaling_csv,
    scaling_summary,
)
from moqubo.problems import Family, barabasi_albert, generate
from moqubo.roofdual import roof_dual_range
from helpers import argmin_set


def _quiet(_msg):
    pass


def test_all_combinations_count_and_order():
    combos = all_combinations(tuple(Family))
    assert len(combos) == 11
    assert combos[0] == (Family.MC01, Family.MCB)
    assert combos[-1] == tuple(Family)
    assert len({combination_mask(c) for c in combos}) == 11


def test_plan_validation():
    with pytest.raises(ValueError, match="at least one"):
        ExperimentPlan(n=10, attach_m=2, master_seed=0, methods=())
    with pytest.raises(ValueError, match="unknown method"):
        ExperimentPlan(n=10, attach_m=2, master_seed=0, methods=("magic",))
    with pytest.raises(ValueError, match="fewer than 2"):
        ExperimentPlan(n=10, attach_m=2, master_seed=0,
                       combinations=((Family.MC01,),))
    with pytest.raises(ValueError, match="master seed"):
        plan_from_json({"n": 10})


def test_brute_force_plan_has_zero_std_across_repetitions():
    plan = ExperimentPlan(
        n=12, attach_m=2, master_seed=7, repetitions=3, solver="brute_force",
        methods=("standardize",), families=(Family.MC01, Family.SUBSUM),
        ref_points=200,
    )
    report = run_experiment(plan, log=_quiet)
    assert len(report.cells) == 1
    cell = report.cell((Family.MC01, Family.SUBSUM), "standardize")
    assert cell.status == "ok"
    assert cell.hv_std == 0.0


def test_rerun_same_seed_is_byte_identical():
    plan = ExperimentPlan(n=16, attach_m=2, master_seed=11, repetitions=2,
                          runs=4, ref_points=200, sweeps_per_temp=2)
    a = run_experiment(plan, log=_quiet)
    b = run_experiment(plan, log=_quiet)
    assert report_csv(a) == report_csv(b)
    assert report_json(a) == report_json(b)
    assert scaling_csv(a) == scaling_csv(b)


def test_parallel_equals_serial():
    plan = ExperimentPlan(n=14, attach_m=2, master_seed=3, repetitions=2,
                          runs=3, ref_points=150, sweeps_per_temp=2)
    serial = run_experiment(plan, jobs=1, log=_quiet)
    parallel = run_experiment(plan, jobs=4, log=_quiet)
    assert report_csv(serial) == report_csv(parallel)


def test_cells_independent_of_method_order():
    base = dict(n=14, attach_m=2, master_seed=5, repetitions=2, runs=3,
                ref_points=150, sweeps_per_temp=2,
                families=(Family.MC01, Family.MCZ, Family.SUBSUM))
    fwd = run_experiment(ExperimentPlan(methods=("original", "standardize"), **base),
                         log=_quiet)
    rev = run_experiment(ExperimentPlan(methods=("standardize", "original"), **base),
                         log=_quiet)
    for combo in fwd.plan.combinations:
        for method in ("original", "standardize"):
            assert fwd.cell(combo, method).hv_mean == rev.cell(combo, method).hv_mean


def test_objective_vectors_come_from_unscaled_objectives():
    plan = ExperimentPlan(n=12, attach_m=2, master_seed=9, repetitions=1,
                          runs=4, ref_points=100, sweeps_per_temp=2,
                          families=(Family.MCB, Family.SUBSUM))
    report = run_experiment(plan, log=_quiet)
    graph = barabasi_albert(12, 2, np.random.SeedSequence(9, spawn_key=(0, 0)))
    order = list(Family)
    originals = [
        generate(f, graph, np.random.SeedSequence(9, spawn_key=(0, 1 + order.index(f))))
        for f in plan.families
    ]
    for cell in report.cells.values():
        for front in cell.fronts:
            for record in front.records:
                want = [evaluate(o, record.bits) for o in originals]
                assert np.allclose(record.objectives, want, rtol=1e-12)


def test_degenerate_objective_fails_single_cell_only():
    plan = ExperimentPlan(n=6, attach_m=2, master_seed=1, repetitions=1,
                          runs=2, ref_points=50, sweeps_per_temp=2,
                          families=(Family.MC01, Family.MCB))
    zero = QuboInstance(np.zeros((6, 6)), label="mc01")
    other = generate(Family.MCB, barabasi_albert(6, 2, seed=0), seed=1)
    instances = {Family.MC01: zero, Family.MCB: other}
    cells = _run_combination(plan, instances, (Family.MC01, Family.MCB), _quiet)
    by_method = {c.method: c for c in cells}
    assert by_method["standardize"].status == "failed"
    assert "zero variance" in by_method["standardize"].error
    assert by_method["roof_dual"].status == "failed"
    assert by_method["original"].status == "ok"
    assert by_method["original"].hv_mean is not None


def test_standardized_scalarization_matches_inverse_sigma_weights():
    rng = np.random.default_rng(60)
    for _ in range(10):
        n = int(rng.integers(4, 11))
        mo = MultiObjectiveSet(tuple(symmetrize(rng.uniform(-4, 4, (n, n)))
                                     for _ in range(2)))
        scaled, _ = standardize(mo)
        a = scalarize(scaled, [1.0, 1.0])
        sigmas = [std_uniform(o) for o in mo]
        b = scalarize(mo, [1.0 / s for s in sigmas])
        assert argmin_set(a.q) == argmin_set(b.q)


def test_scaling_summary_hand_values():
    mo = MultiObjectiveSet((QuboInstance(np.array([[1.0]]), label="a"),
                            QuboInstance(np.array([[2.0]]), label="b")))
    rows = scaling_summary(mo)
    assert rows[0].roof_dual_width == pytest.approx(1.0)
    assert rows[0].sigma == pytest.approx(0.5)
    assert rows[1].roof_dual_width == pytest.approx(2.0)


def test_range_exceeds_sigma_on_midsize_instances():
    for seed in range(5):
        graph = barabasi_albert(200, 2, seed=seed)
        for fam in Family:
            inst = generate(fam, graph, seed=seed + 40)
            width = roof_dual_range(inst).width
            sigma = std_uniform(inst)
            assert width / sigma > 1.0, (fam, width, sigma)


def test_report_csv_layout():
    plan = ExperimentPlan(n=12, attach_m=2, master_seed=2, repetitions=1,
                          runs=2, ref_points=50, sweeps_per_temp=2)
    report = run_experiment(plan, log=_quiet)
    lines = report_csv(report).strip().split("\n")
    assert lines[0] == ("mc01,mcb,mcz,subsum,original_mean,original_std,"
                        "roof_dual_mean,roof_dual_std,standardize_mean,standardize_std")
    assert len(lines) == 12  # header + 11 combinations
    flags = [line.split(",")[:4] for line in lines[1:]]
    assert flags[0] == ["1", "1", "0", "0"]
    assert flags[-1] == ["1", "1", "1", "1"]
