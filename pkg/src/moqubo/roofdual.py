"""Roof-dual bounds on a QUBO's objective range, and range normalization.

The lower bound comes from rewriting the objective as a posiform (a
constant plus nonnegative-weighted products of literals) and running a
max-flow over the induced implication network: each unit of flow along an
s-t path certifies one more unit of constant extractable from the
posiform.  The bound on the maximum is obtained by negating the matrix.
Worst-case cost is O(n^3).  Only bound values are produced; persistency
extraction is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _maxflow
from .core import DegenerateObjectiveError, MultiObjectiveSet, QuboInstance, ScalingReport


@dataclass(frozen=True)
class RangeEstimate:
    """Certified bracket around a QUBO objective's value range."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise ValueError("range bounds must be finite")
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "width": self.width}


def _implication_network(q: np.ndarray):
    """Posiform constant plus the flow network arcs for the roof dual.

    Node layout: 0 = source, 1 = sink, 2+i = literal x_i, 2+n+i = literal
    not-x_i.  Every posiform term of weight a contributes two arcs of
    capacity a/2; linear terms attach to source/sink.
    """
    n = q.shape[0]
    lin = np.diag(q).copy()

    iu, ju = np.triu_indices(n, k=1)
    pair = q[iu, ju] + q[ju, iu]
    nz = pair != 0.0
    iu, ju, pair = iu[nz], ju[nz], pair[nz]

    # b * x_i * x_j with b < 0 is rewritten as b * x_i + |b| * x_i * (1 - x_j),
    # absorbing the negative part into the linear term of x_i.
    neg = pair < 0.0
    np.add.at(lin, iu[neg], pair[neg])

    pos_i = 2 + iu
    pos_j = 2 + ju
    neg_i = 2 + n + iu
    neg_j = 2 + n + ju
    half = np.abs(pair) / 2.0

    # Term a*u*v maps to arcs (node(~v) -> node(u)) and (node(~u) -> node(v)).
    frm_a = np.where(neg, pos_j, neg_j)
    to_a = pos_i
    frm_b = neg_i
    to_b = np.where(neg, neg_j, pos_j)

    lpos = lin > 0.0
    lneg = lin < 0.0
    idx_pos = np.nonzero(lpos)[0]
    idx_neg = np.nonzero(lneg)[0]
    const = float(lin[lneg].sum())

    frm = np.concatenate([
        frm_a, frm_b,
        np.zeros(idx_pos.shape, dtype=np.int64),        # source -> x_i
        2 + n + idx_pos,                                # not-x_i -> sink
        2 + idx_neg,                                    # x_i -> sink
        np.zeros(idx_neg.shape, dtype=np.int64),        # source -> not-x_i
    ])
    to = np.concatenate([
        to_a, to_b,
        2 + idx_pos,
        np.ones(idx_pos.shape, dtype=np.int64),
        np.ones(idx_neg.shape, dtype=np.int64),
        2 + n + idx_neg,
    ])
    cap = np.concatenate([
        half, half,
        lin[idx_pos] / 2.0,
        lin[idx_pos] / 2.0,
        -lin[idx_neg] / 2.0,
        -lin[idx_neg] / 2.0,
    ])
    return const, 2 * n + 2, frm.astype(np.int64), to.astype(np.int64), cap


def roof_dual_lower(instance: QuboInstance) -> float:
    """A lower bound L <= min_x f(x) from the roof dual of the objective."""
    const, n_nodes, frm, to, cap = _implication_network(instance.q)
    return const + _maxflow.max_flow(n_nodes, frm, to, cap, 0, 1)


def roof_dual_range(instance: QuboInstance) -> RangeEstimate:
    """Bracket [L, U] with L <= min f and U >= max f.

    The upper end is the negation trick, -roof_dual_lower(-Q); the roof dual
    itself only bounds minima.
    """
    lower = roof_dual_lower(instance)
    upper = -roof_dual_lower(QuboInstance(-instance.q, instance.label))
    return RangeEstimate(lower=lower, upper=upper)


def normalize_by_range(
    mo_set: MultiObjectiveSet,
) -> tuple[MultiObjectiveSet, list[ScalingReport]]:
    """Rescale every objective by the reciprocal of its roof-dual range width.

    Mean-shift constants of the textbook range normalization are dropped
    (argmin-invariant).  Raises DegenerateObjectiveError on zero width.
    """
    scaled = []
    reports = []
    for k, obj in enumerate(mo_set):
        est = roof_dual_range(obj)
        if est.width <= 0.0:
            raise DegenerateObjectiveError(k, "zero roof-dual range width")
        scaled.append(QuboInstance(obj.q / est.width, obj.label))
        reports.append(ScalingReport(index=k, method="roof_dual",
                                     scale=1.0 / est.width,
                                     lower=est.lower, upper=est.upper))
    return MultiObjectiveSet(tuple(scaled)), reports
