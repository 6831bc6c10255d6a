"""Exact moments of a QUBO objective under uniform random assignments.

With every variable an independent Bernoulli(1/2), the mean of
f(X) = X^T Q X costs O(n^2), the second moment has an O(n^4) closed form
(a quadruple sum weighted by 2^-(number of distinct indices)), and the
variance collapses to an O(n^3) loop.  Standardizing a multi-objective
set divides each matrix by its objective's standard deviation, putting
all objectives on a common unit-variance scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    DegenerateObjectiveError,
    MultiObjectiveSet,
    QuboInstance,
    ScalingReport,
)

# Agreement required between the variance loop and the
# second-moment-minus-squared-mean path.
PATH_RTOL = 1e-9


def mean_uniform(instance: QuboInstance) -> float:
    """E[f(X)] = 1/2 * sum_i Q_ii + 1/4 * sum_{i != j} Q_ij.  O(n^2)."""
    q = instance.q
    tr = float(np.trace(q))
    return 0.5 * tr + 0.25 * (float(q.sum()) - tr)


@njit(cache=True, nogil=True)
def _second_moment_kernel(q):
    # Quadruple sum of Q_ij * Q_kl * 2^-(distinct index count).  Kept as the
    # literal O(n^4) reference path; the weight exponent counts how many of
    # i, j, k, l are distinct.
    n = q.shape[0]
    pw = np.array([1.0, 0.5, 0.25, 0.125, 0.0625])
    v = 0.0
    for i in range(n):
        for j in range(n):
            qij = q[i, j]
            dij = 1 + (1 if j != i else 0)
            for k in range(n):
                dk = dij + (1 if (k != i and k != j) else 0)
                for l in range(n):
                    d = dk + (1 if (l != i and l != j and l != k) else 0)
                    v += qij * q[k, l] * pw[d]
    return v


def second_moment_uniform(instance: QuboInstance) -> float:
    """E[f(X)^2] via the quadruple closed-form sum.  O(n^4); reference path.

    Intended for n up to roughly 150; beyond that prefer
    ``variance_fast(q) + mean_uniform(q)**2``.
    """
    return float(_second_moment_kernel(instance.q))


@njit(cache=True, nogil=True)
def _variance_kernel(q, qt):
    # Triple loop over (i, j, k), with k covering every index including i
    # and j; the pair term applies only off-diagonal.  qt is the transpose,
    # passed so all four inner reads stream along rows.
    n = q.shape[0]
    v = 0.0
    for i in range(n):
        for j in range(n):
            qij = q[i, j]
            if i != j:
                v += qij * (qij + q[j, i]) / 16.0
            acc = 0.0
            for k in range(n):
                acc += qt[i, k] + qt[j, k] + q[i, k] + q[j, k]
            v += qij * acc / 16.0
    return v


@njit(cache=True, nogil=True)
def _variance_kernel_compensated(q, qt):
    # Same loop with Kahan-compensated accumulation of the per-(i, j)
    # contributions, for very large n.
    n = q.shape[0]
    v = 0.0
    c = 0.0
    for i in range(n):
        for j in range(n):
            qij = q[i, j]
            term = 0.0
            if i != j:
                term = qij * (qij + q[j, i]) / 16.0
            acc = 0.0
            for k in range(n):
                acc += qt[i, k] + qt[j, k] + q[i, k] + q[j, k]
            term += qij * acc / 16.0
            y = term - c
            t = v + y
            c = (t - v) - y
            v = t
    return v


def variance_fast(instance: QuboInstance, compensated: bool = False) -> float:
    """Var(f(X)) for independent Bernoulli(1/2) variables.  O(n^3).

    ``compensated`` switches to Kahan summation; worth considering for
    n above ~500 where plain accumulation drifts.
    """
    q = instance.q
    qt = np.ascontiguousarray(q.T)
    if compensated:
        return float(_variance_kernel_compensated(q, qt))
    return float(_variance_kernel(q, qt))


def std_uniform(instance: QuboInstance) -> float:
    """Standard deviation of f(X); sqrt of the fast variance."""
    v = variance_fast(instance)
    if v < 0:  # only reachable through float cancellation on near-zero matrices
        v = 0.0
    return math.sqrt(v)


@dataclass(frozen=True)
class MomentSummary:
    """First two moments of f(X) plus derived variance and standard deviation."""

    mean: float
    second_moment: float
    variance: float
    std_dev: float

    def to_json(self) -> dict:
        return {
            "mean": self.mean,
            "second_moment": self.second_moment,
            "variance": self.variance,
            "std_dev": self.std_dev,
        }


def summarize(instance: QuboInstance, cross_check: bool = False) -> MomentSummary:
    """Compute a MomentSummary for one instance.

    By default the second moment is derived as mean^2 + variance.  With
    ``cross_check`` the quadruple-sum reference path is computed instead and
    must agree with the fast variance to relative tolerance 1e-9, otherwise
    a ValueError is raised.
    """
    mean = mean_uniform(instance)
    var = variance_fast(instance)
    if cross_check:
        m2 = second_moment_uniform(instance)
        alt = m2 - mean * mean
        scale = max(abs(var), abs(m2), 1.0)
        if abs(alt - var) > PATH_RTOL * scale:
            raise ValueError(
                f"moment paths disagree: variance loop gives {var!r}, "
                f"second-moment path gives {alt!r}"
            )
    else:
        m2 = var + mean * mean
    return MomentSummary(mean=mean, second_moment=m2, variance=var,
                         std_dev=math.sqrt(max(var, 0.0)))


def standardize(
    mo_set: MultiObjectiveSet,
) -> tuple[MultiObjectiveSet, list[ScalingReport]]:
    """Rescale every objective to unit variance under uniform assignments.

    Objective i is replaced by Q_i / sigma_i.  The mean-shift constant of a
    textbook standardization is dropped: a QUBO matrix cannot carry an
    additive constant and the argmin is unaffected.

    Raises DegenerateObjectiveError for an objective with zero variance.
    """
    scaled = []
    reports = []
    for k, obj in enumerate(mo_set):
        mean = mean_uniform(obj)
        var = variance_fast(obj)
        if var <= 0.0:
            raise DegenerateObjectiveError(k, "zero variance")
        sigma = math.sqrt(var)
        scaled.append(QuboInstance(obj.q / sigma, obj.label))
        reports.append(ScalingReport(index=k, method="standardize",
                                     scale=1.0 / sigma, mean=mean, sigma=sigma))
    return MultiObjectiveSet(tuple(scaled)), reports
