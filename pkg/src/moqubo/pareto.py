"""Dominance filtering and the averaged-hypervolume quality measure.

All objectives are minimized.  The hypervolume of a solution set with
respect to a reference point is the Lebesgue measure of the region
dominated by at least one solution and bounded above by the reference
point; here it is averaged over many reference points sampled uniformly
from a shared box, so that methods compared under the same protocol see
the same reference distribution.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import as_binary_vector

MAX_HV_DIM = 4


@dataclass(frozen=True)
class SolutionRecord:
    """A binary assignment together with its objective vector."""

    bits: np.ndarray
    objectives: np.ndarray

    def __post_init__(self):
        b = as_binary_vector(self.bits, len(self.bits))
        b.setflags(write=False)
        obj = np.asarray(self.objectives, dtype=np.float64)
        if obj.ndim != 1:
            raise ValueError("objective vector must be one-dimensional")
        if not np.all(np.isfinite(obj)):
            raise ValueError("objective vector contains non-finite entries")
        obj.setflags(write=False)
        object.__setattr__(self, "bits", b)
        object.__setattr__(self, "objectives", obj)


@dataclass(frozen=True)
class FrontSet:
    """Mutually non-dominated solution records (one per distinct vector)."""

    records: tuple[SolutionRecord, ...]

    def objectives(self) -> np.ndarray:
        if not self.records:
            return np.empty((0, 0))
        return np.vstack([r.objectives for r in self.records])

    def __len__(self) -> int:
        return len(self.records)


def dominates(a, b) -> bool:
    """True iff a <= b componentwise with at least one strict inequality."""
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    if av.shape != bv.shape:
        raise ValueError(f"objective vectors differ in length: {av.shape} vs {bv.shape}")
    return bool(np.all(av <= bv) and np.any(av < bv))


def non_dominated_filter(records: list[SolutionRecord] | tuple[SolutionRecord, ...]) -> FrontSet:
    """Keep the records whose objective vectors no other record dominates.

    Exact-duplicate objective vectors collapse to their first occurrence.
    """
    if not records:
        return FrontSet(records=())
    objs = np.vstack([r.objectives for r in records])
    keep: list[int] = []
    seen: set[tuple] = set()
    for i in range(objs.shape[0]):
        key = tuple(objs[i])
        if key in seen:
            continue
        le = np.all(objs <= objs[i], axis=1)
        lt = np.any(objs < objs[i], axis=1)
        if not np.any(le & lt):
            keep.append(i)
            seen.add(key)
    return FrontSet(records=tuple(records[i] for i in keep))


def _points_of(front) -> np.ndarray:
    if isinstance(front, FrontSet):
        return front.objectives()
    pts = np.asarray(front, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("front must be a 2-D array of objective vectors")
    return pts


def _prune_dominated_min(points: np.ndarray) -> np.ndarray:
    """Minimal (non-dominated) elements of a point set, duplicates removed."""
    if points.shape[0] <= 1:
        return points
    order = np.lexsort(points.T[::-1])
    pts = points[order]
    keep = []
    for i in range(pts.shape[0]):
        p = pts[i]
        dominated = False
        for j in keep:
            if np.all(pts[j] <= p):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return pts[keep]


def _hv_2d(points: np.ndarray, ref: np.ndarray) -> float:
    # Staircase sweep; requires a pruned front, so sorting by x ascending
    # gives strictly descending y.  The strip [x_i, x_{i+1}) is covered
    # exactly down to y_i.
    order = np.argsort(points[:, 0])
    pts = points[order]
    xs = np.append(pts[:, 0], ref[0])
    vol = 0.0
    for i in range(pts.shape[0]):
        vol += (xs[i + 1] - xs[i]) * (ref[1] - pts[i, 1])
    return vol


def _hv_recursive(points: np.ndarray, ref: np.ndarray) -> float:
    if points.shape[0] == 0:
        return 0.0
    if points.shape[1] == 2:
        return _hv_2d(points, ref)
    # exclusive-volume recursion: each point contributes its box minus the
    # part already covered by the points after it
    order = np.argsort(-points[:, -1])
    pts = points[order]
    vol = 0.0
    for i in range(pts.shape[0]):
        p = pts[i]
        vol += float(np.prod(ref - p))
        if i + 1 < pts.shape[0]:
            limited = np.maximum(p, pts[i + 1:])
            limited = _prune_dominated_min(limited)
            vol -= _hv_recursive(limited, ref)
    return vol


def hypervolume_exact(front, ref) -> float:
    """Exact hypervolume of a front against one reference point.

    Supports 2 to 4 objectives.  Points not componentwise <= the
    reference are clipped out of the computation with a warning.
    """
    pts = _points_of(front)
    refv = np.asarray(ref, dtype=np.float64)
    m = refv.shape[0]
    if not (2 <= m <= MAX_HV_DIM):
        raise ValueError(f"hypervolume supports 2..{MAX_HV_DIM} objectives, got {m}")
    if pts.shape[0] and pts.shape[1] != m:
        raise ValueError(f"points have {pts.shape[1]} objectives, reference has {m}")
    if pts.shape[0]:
        inside = np.all(pts <= refv, axis=1)
        if not np.all(inside):
            warnings.warn(
                f"{int((~inside).sum())} point(s) exceed the reference point "
                "and were clipped out of the hypervolume",
                stacklevel=2,
            )
            pts = pts[inside]
    pts = _prune_dominated_min(pts) if pts.shape[0] else pts
    return float(_hv_recursive(pts, refv))


@dataclass(frozen=True)
class HvProtocol:
    """Shared reference-point sampling protocol for comparing methods.

    Reference points are drawn componentwise-uniform from the box
    [z_ref, 2*z_ref - z_desire]: a translated copy of the solution
    bounding box, so every sampled point is dominated by every solution
    that contributed to the protocol.
    """

    ref_point_count: int
    z_ref: np.ndarray
    z_desire: np.ndarray
    seed: int

    def __post_init__(self):
        zr = np.asarray(self.z_ref, dtype=np.float64)
        zd = np.asarray(self.z_desire, dtype=np.float64)
        if zr.shape != zd.shape or zr.ndim != 1:
            raise ValueError("z_ref and z_desire must be vectors of equal length")
        if np.any(zd > zr):
            raise ValueError("z_desire must be componentwise <= z_ref")
        if self.ref_point_count < 1:
            raise ValueError("ref_point_count must be >= 1")
        zr.setflags(write=False)
        zd.setflags(write=False)
        object.__setattr__(self, "z_ref", zr)
        object.__setattr__(self, "z_desire", zd)

    @property
    def z_anti(self) -> np.ndarray:
        return 2.0 * self.z_ref - self.z_desire


def build_protocol(fronts, count: int, seed: int) -> HvProtocol:
    """Protocol from every solution of every front: z_ref is the
    componentwise maximum, z_desire the componentwise minimum."""
    all_pts = [_points_of(f) for f in fronts]
    all_pts = [p for p in all_pts if p.shape[0]]
    if not all_pts:
        raise ValueError("cannot build a protocol from an empty union of fronts")
    stacked = np.vstack(all_pts)
    return HvProtocol(
        ref_point_count=count,
        z_ref=stacked.max(axis=0),
        z_desire=stacked.min(axis=0),
        seed=seed,
    )


@dataclass(frozen=True)
class HypervolumeResult:
    """Mean/std of the hypervolume over sampled reference points."""

    mean: float
    std: float
    count: int
    z_ref: np.ndarray
    z_anti: np.ndarray

    def to_json(self) -> dict:
        return {
            "mean": self.mean,
            "std": self.std,
            "count": self.count,
            "z_ref": list(map(float, self.z_ref)),
            "z_anti": list(map(float, self.z_anti)),
        }


def _sample_refs(proto: HvProtocol) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(proto.seed)))
    u = rng.random((proto.ref_point_count, proto.z_ref.shape[0]))
    return proto.z_ref + (proto.z_anti - proto.z_ref) * u


def _interpolated_hv(pts: np.ndarray, proto: HvProtocol, refs: np.ndarray) -> np.ndarray:
    """Hypervolume at every reference point via multilinear interpolation.

    For reference points componentwise above every front point, the
    hypervolume is multilinear in the reference coordinates (the dominated
    slice at height r_d no longer depends on r_d once r_d clears all
    points).  Evaluating the exact hypervolume at the 2^m corners of the
    sampling box therefore determines it everywhere in the box.
    """
    m = proto.z_ref.shape[0]
    lo = proto.z_ref
    hi = proto.z_anti
    width = hi - lo
    live = width > 0
    t = np.zeros_like(refs)
    t[:, live] = (refs[:, live] - lo[live]) / width[live]
    out = np.zeros(refs.shape[0])
    for corner in range(1 << m):
        ref = lo.copy()
        w = np.ones(refs.shape[0])
        skip = False
        for d in range(m):
            if corner >> d & 1:
                if not live[d]:
                    skip = True
                    break
                ref[d] = hi[d]
                w = w * t[:, d]
            else:
                if live[d]:
                    w = w * (1.0 - t[:, d])
        if skip:
            continue
        out += w * hypervolume_exact(pts, ref)
    return out


def averaged_hypervolume(front, proto: HvProtocol) -> HypervolumeResult:
    """Mean and standard deviation of the exact hypervolume over the
    protocol's sampled reference points.  Deterministic per protocol seed.

    The fast path interpolates the (multilinear) hypervolume from the box
    corners; it applies whenever every front point lies componentwise at
    or below z_ref, which protocols built from the fronts guarantee.
    Otherwise each reference point is evaluated directly.
    """
    pts = _points_of(front)
    refs = _sample_refs(proto)
    if pts.shape[0] == 0:
        values = np.zeros(refs.shape[0])
    elif np.all(pts <= proto.z_ref):
        values = _interpolated_hv(pts, proto, refs)
    else:
        values = np.array([hypervolume_exact(pts, r) for r in refs])
    return HypervolumeResult(
        mean=float(values.mean()),
        std=float(values.std()),
        count=proto.ref_point_count,
        z_ref=proto.z_ref.copy(),
        z_anti=proto.z_anti.copy(),
    )
