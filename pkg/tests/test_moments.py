import numpy as np
import pytest

from moqubo.core import DegenerateObjectiveError, MultiObjectiveSet, QuboInstance, symmetrize
from moqubo.moments import (
    mean_uniform,
    second_moment_uniform,
    standardize,
    std_uniform,
    summarize,
    variance_fast,
)
from helpers import exhaustive_values, explicit_case_variance


def _random_instance(rng, n, scale=5.0):
    return symmetrize(rng.uniform(-scale, scale, (n, n)))


def test_mean_single_diagonal():
    assert mean_uniform(QuboInstance(np.array([[1.0]]))) == 0.5


def test_mean_offdiagonal_pair():
    assert mean_uniform(QuboInstance(np.array([[0.0, 1.0], [1.0, 0.0]]))) == 0.5


def test_mean_matches_enumeration():
    rng = np.random.default_rng(10)
    inst = _random_instance(rng, 10)
    want = exhaustive_values(inst.q).mean()
    assert mean_uniform(inst) == pytest.approx(want, rel=1e-12)


def test_second_moment_single_term():
    assert second_moment_uniform(QuboInstance(np.array([[1.0]]))) == 0.5


def test_second_moment_pair():
    inst = QuboInstance(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert second_moment_uniform(inst) == 1.0


def test_second_moment_matches_enumeration():
    rng = np.random.default_rng(11)
    inst = _random_instance(rng, 8)
    want = (exhaustive_values(inst.q) ** 2).mean()
    assert second_moment_uniform(inst) == pytest.approx(want, rel=1e-11)


def test_variance_bernoulli_single():
    assert variance_fast(QuboInstance(np.array([[1.0]]))) == 0.25


def test_variance_pair():
    inst = QuboInstance(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert variance_fast(inst) == pytest.approx(0.75, rel=1e-15)


def test_variance_dual_oracle():
    rng = np.random.default_rng(12)
    inst = _random_instance(rng, 12)
    vals = exhaustive_values(inst.q)
    enum_var = vals.var()
    path_var = second_moment_uniform(inst) - mean_uniform(inst) ** 2
    fast = variance_fast(inst)
    assert fast == pytest.approx(enum_var, rel=1e-10)
    assert fast == pytest.approx(path_var, rel=1e-10)


def test_variance_matches_enumeration_many_sizes():
    rng = np.random.default_rng(13)
    for _ in range(30):
        n = int(rng.integers(2, 13))
        inst = _random_instance(rng, n)
        want = exhaustive_values(inst.q).var()
        scale = max(1.0, abs(want))
        assert abs(variance_fast(inst) - want) <= 1e-9 * scale


def test_variance_matches_explicit_case_formula():
    rng = np.random.default_rng(14)
    for _ in range(10):
        n = int(rng.integers(2, 11))
        inst = _random_instance(rng, n)
        want = explicit_case_variance(inst.q)
        assert variance_fast(inst) == pytest.approx(want, rel=1e-10)


def test_explicit_case_formula_handles_asymmetric_input():
    # the variance of f is representation-independent; check the general form
    rng = np.random.default_rng(15)
    sym = symmetrize(rng.uniform(-3, 3, (7, 7))).q
    upper = np.triu(2.0 * sym) - np.diag(np.diag(sym))  # one-sided storage of f
    want = exhaustive_values(sym).var()
    assert explicit_case_variance(upper) == pytest.approx(want, rel=1e-10)


def test_scale_law():
    rng = np.random.default_rng(16)
    inst = _random_instance(rng, 9)
    alpha = 2.5
    scaled = inst.scaled(alpha)
    assert mean_uniform(scaled) == pytest.approx(alpha * mean_uniform(inst), rel=1e-12)
    assert variance_fast(scaled) == pytest.approx(
        alpha ** 2 * variance_fast(inst), rel=1e-12
    )


def test_diagonal_shift_moves_mean_by_half():
    rng = np.random.default_rng(17)
    inst = _random_instance(rng, 8)
    shifted = QuboInstance(inst.q + np.eye(8) * 3.0)
    assert mean_uniform(shifted) == pytest.approx(
        mean_uniform(inst) + 0.5 * 3.0 * 8, rel=1e-12
    )


def test_compensated_variance_agrees():
    rng = np.random.default_rng(18)
    inst = _random_instance(rng, 60)
    assert variance_fast(inst, compensated=True) == pytest.approx(
        variance_fast(inst), rel=1e-12
    )


def test_summary_cross_check_paths():
    rng = np.random.default_rng(19)
    inst = _random_instance(rng, 20)
    s = summarize(inst, cross_check=True)
    assert s.std_dev == pytest.approx(np.sqrt(s.variance), rel=1e-15)
    assert s.second_moment - s.mean ** 2 == pytest.approx(s.variance, rel=1e-9)


def test_standardize_single_coefficient():
    mo = MultiObjectiveSet((QuboInstance(np.array([[1.0]])),
                            QuboInstance(np.array([[4.0]]))))
    scaled, reports = standardize(mo)
    assert np.allclose(scaled.objectives[0].q, [[2.0]])  # sigma = 0.5
    assert reports[0].sigma == pytest.approx(0.5)
    assert reports[0].to_json()["method"] == "standardize"


def test_standardize_yields_unit_variance():
    rng = np.random.default_rng(20)
    for _ in range(10):
        n = int(rng.integers(3, 16))
        mo = MultiObjectiveSet(tuple(_random_instance(rng, n) for _ in range(3)))
        scaled, reports = standardize(mo)
        for obj, rep in zip(scaled, reports):
            assert abs(variance_fast(obj) - 1.0) <= 1e-9
            assert rep.scale == pytest.approx(1.0 / rep.sigma, rel=1e-12)


def test_standardize_zero_variance_error_names_index():
    mo = MultiObjectiveSet((QuboInstance(np.eye(3)), QuboInstance(np.zeros((3, 3)))))
    with pytest.raises(DegenerateObjectiveError, match="objective 1.*zero variance"):
        standardize(mo)


def test_std_uniform_is_sqrt_variance():
    rng = np.random.default_rng(21)
    inst = _random_instance(rng, 10)
    assert std_uniform(inst) == pytest.approx(np.sqrt(variance_fast(inst)), rel=1e-12)


def test_moments_stay_finite_across_extreme_magnitudes():
    # coefficient scales spanning many orders of magnitude must not overflow
    rng = np.random.default_rng(22)
    base = _random_instance(rng, 10, scale=1.0)
    for alpha in (1e-9, 1e-3, 1e3, 1e9):
        scaled = base.scaled(alpha)
        var = variance_fast(scaled)
        assert np.isfinite(var)
        assert var == pytest.approx(alpha ** 2 * variance_fast(base), rel=1e-9)
