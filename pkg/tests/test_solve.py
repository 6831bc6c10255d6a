import numpy as np
import pytest

from moqubo.core import QuboInstance, evaluate, symmetrize
from moqubo.solve import (
    SolveConfig,
    _anneal_init,
    _anneal_level,
    _temperature_schedule,
    anneal,
    brute_force,
    enumerate_objective,
)
from helpers import exhaustive_min, exhaustive_values


def test_brute_force_trivial():
    bits, value = brute_force(QuboInstance(np.array([[1.0]])))
    assert list(bits) == [0] and value == 0.0


def test_brute_force_tie_breaks_lexicographically():
    inst = symmetrize([[-1.0, 2.0], [2.0, -1.0]])
    bits, value = brute_force(inst)
    assert value == -1.0
    assert list(bits) == [0, 1]  # the lexicographically lower of the two minima


def test_brute_force_single_edge_maxcut():
    inst = symmetrize([[-0.7, 0.7], [0.7, -0.7]])
    _, value = brute_force(inst)
    assert value == pytest.approx(-0.7)


def test_brute_force_matches_enumeration():
    rng = np.random.default_rng(40)
    for _ in range(15):
        n = int(rng.integers(2, 13))
        inst = symmetrize(rng.uniform(-4, 4, (n, n)))
        _, value = brute_force(inst)
        assert value == pytest.approx(exhaustive_min(inst.q), rel=1e-10, abs=1e-10)


def test_brute_force_guard():
    with pytest.raises(ValueError, match="anneal"):
        brute_force(QuboInstance(np.eye(27)))


def test_enumerate_objective_bit_order_and_values():
    rng = np.random.default_rng(41)
    inst = symmetrize(rng.uniform(-3, 3, (9, 9)))
    vals = enumerate_objective(inst)
    want = exhaustive_values(inst.q)
    # helpers order is lexicographic over tuples; library order is bit i = (b >> i) & 1
    idx = np.array([int("".join(map(str, bits))[::-1], 2)
                    for bits in np.ndindex(*(2,) * 9)])
    assert np.allclose(vals[idx], want, rtol=1e-12)


def test_anneal_zero_matrix():
    out = anneal(QuboInstance(np.zeros((6, 6))), SolveConfig(runs=3, seed=0))
    assert out.best_value == 0.0
    assert len(out.all_solutions) == 3


def test_anneal_deterministic_per_seed():
    rng = np.random.default_rng(42)
    inst = symmetrize(rng.uniform(-4, 4, (20, 20)))
    cfg = SolveConfig(runs=4, seed=7, sweeps_per_temp=2)
    a = anneal(inst, cfg)
    b = anneal(inst, cfg)
    assert a.best_value == b.best_value
    for x, y in zip(a.all_solutions, b.all_solutions):
        assert np.array_equal(x, y)
    c = anneal(inst, SolveConfig(runs=4, seed=8, sweeps_per_temp=2))
    assert any(not np.array_equal(x.trajectory, y.trajectory)
               for x, y in zip(a.runs, c.runs))


def test_anneal_finds_global_minimum_reliably():
    rng = np.random.default_rng(43)
    hits = 0
    trials = 100
    for s in range(trials):
        inst = symmetrize(rng.uniform(-4, 4, (12, 12)))
        _, best = brute_force(inst)
        out = anneal(inst, SolveConfig(runs=3, seed=s, sweeps_per_temp=4))
        hits += abs(out.best_value - best) <= 1e-9 * max(1.0, abs(best))
    assert hits >= 95, f"annealer matched brute force in only {hits}/{trials} trials"


def test_incremental_delta_matches_full_reevaluation():
    rng = np.random.default_rng(44)
    inst = symmetrize(rng.uniform(-3, 3, (15, 15)))
    q = inst.q
    x, s, f, state = _anneal_init(q, np.uint64(123))
    assert f == pytest.approx(evaluate(inst, x), rel=1e-12, abs=1e-12)
    best_x = x.copy()
    for temp in (5.0, 1.0, 0.1):
        f, _, state, _ = _anneal_level(q, x, s, f, best_x, np.inf, temp, 3,
                                       np.uint64(state))
        assert f == pytest.approx(evaluate(inst, x), rel=1e-9, abs=1e-9)
        assert np.allclose(s, q @ x, rtol=1e-9, atol=1e-12)


def test_best_trajectory_is_monotone():
    rng = np.random.default_rng(45)
    inst = symmetrize(rng.uniform(-4, 4, (18, 18)))
    out = anneal(inst, SolveConfig(runs=3, seed=1))
    for run in out.runs:
        assert np.all(np.diff(run.trajectory) <= 0.0)
        assert run.best_value == pytest.approx(run.trajectory[-1], rel=1e-12)


def test_outcome_values_consistent_with_bits():
    rng = np.random.default_rng(46)
    inst = symmetrize(rng.uniform(-4, 4, (14, 14)))
    cfg = SolveConfig(runs=5, seed=3)
    out = anneal(inst, cfg)
    assert out.best_value == evaluate(inst, out.best)
    for run in out.runs:
        assert run.best_value == evaluate(inst, run.bits)
    doc = out.to_json(cfg)
    assert len(doc["runs"]) == 5
    assert doc["runs"][0]["bits"][0] in "01"
    assert doc["config"]["runs"] == 5


def test_time_limited_mode_stops_early():
    rng = np.random.default_rng(47)
    inst = symmetrize(rng.uniform(-4, 4, (300, 300)))
    cfg = SolveConfig(runs=1, seed=0, sweeps_per_temp=5000, time_limit_ms=50)
    out = anneal(inst, cfg)  # full schedule would need seconds, not 50 ms
    assert out.runs[0].trajectory.shape[0] < 200


def test_anneal_single_variable():
    inst = QuboInstance(np.array([[-2.0]]))
    out = anneal(inst, SolveConfig(runs=2, seed=1))
    assert out.best_value == -2.0 and list(out.best) == [1]


def test_temperature_schedule_shape():
    rng = np.random.default_rng(48)
    q = symmetrize(rng.uniform(-4, 4, (10, 10))).q
    temps = _temperature_schedule(q, SolveConfig())
    assert temps.shape[0] == 200
    assert temps[0] > temps[-1] > 0
    ratios = temps[1:] / temps[:-1]
    assert np.allclose(ratios, ratios[0])


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(runs=0)
    with pytest.raises(ValueError):
        SolveConfig(t_start=1.0, t_end=2.0)
    with pytest.raises(ValueError):
        SolveConfig(time_limit_ms=0)
