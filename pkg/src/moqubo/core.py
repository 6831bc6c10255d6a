"""Canonical QUBO representation, evaluation, scalarization, and file I/O.

A QUBO objective is f(x) = x^T Q x over binary vectors x, with Q a
symmetric real n-by-n matrix.  Diagonal entries act as linear terms
(x_i^2 = x_i); an off-diagonal pair (i, j) contributes Q[i,j] + Q[j,i]
to the coefficient of x_i * x_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class QuboFormatError(ValueError):
    """Malformed instance file content (schema or entry-level problems)."""


class DegenerateObjectiveError(ValueError):
    """An objective cannot be scaled (zero variance or zero range width)."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"objective {index} is degenerate: {reason}")
        self.index = index
        self.reason = reason


def _as_matrix(q) -> np.ndarray:
    m = np.asarray(q, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError("coefficient matrix must have at least one variable")
    if not np.all(np.isfinite(m)):
        raise ValueError("coefficient matrix contains non-finite entries")
    return m


@dataclass(frozen=True)
class QuboInstance:
    """A symmetric QUBO coefficient matrix with a short label.

    The matrix is validated and frozen (read-only) at construction.
    Use :func:`symmetrize` to canonicalize an asymmetric matrix.
    """

    q: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = _as_matrix(self.q)
        if not np.array_equal(m, m.T):
            raise ValueError(
                "matrix is not symmetric; use symmetrize() to canonicalize"
            )
        m = np.ascontiguousarray(m)
        m.setflags(write=False)
        object.__setattr__(self, "q", m)

    @property
    def n(self) -> int:
        return self.q.shape[0]

    def scaled(self, factor: float, label: str | None = None) -> "QuboInstance":
        """Return a copy with every coefficient multiplied by ``factor``."""
        return QuboInstance(self.q * float(factor),
                            self.label if label is None else label)


@dataclass(frozen=True)
class MultiObjectiveSet:
    """An ordered collection of m >= 2 QUBO objectives over shared variables."""

    objectives: tuple[QuboInstance, ...]

    def __post_init__(self):
        objs = tuple(self.objectives)
        if len(objs) < 2:
            raise ValueError(f"need at least 2 objectives, got {len(objs)}")
        n = objs[0].n
        for k, o in enumerate(objs):
            if o.n != n:
                raise ValueError(
                    f"objective {k} has {o.n} variables, expected {n}"
                )
        object.__setattr__(self, "objectives", objs)

    @property
    def n(self) -> int:
        return self.objectives[0].n

    @property
    def m(self) -> int:
        return len(self.objectives)

    def __iter__(self):
        return iter(self.objectives)


@dataclass(frozen=True)
class ScalingReport:
    """How one objective was rescaled: the method, factor, and its evidence."""

    index: int
    method: str
    scale: float
    mean: float | None = None
    sigma: float | None = None
    lower: float | None = None
    upper: float | None = None

    def to_json(self) -> dict:
        out = {"index": self.index, "method": self.method}
        if self.method == "standardize":
            out["sigma"] = self.sigma
            out["mean"] = self.mean
        elif self.method == "roof_dual":
            out["lower"] = self.lower
            out["upper"] = self.upper
        out["scale"] = self.scale
        return out


def as_binary_vector(x, n: int) -> np.ndarray:
    """Validate and convert ``x`` to an int8 vector of exactly n 0/1 entries."""
    v = np.asarray(x)
    if v.ndim != 1 or v.shape[0] != n:
        raise ValueError(
            f"binary vector has length {v.shape[0] if v.ndim == 1 else v.shape}, "
            f"expected {n}"
        )
    b = v.astype(np.int8)
    if not np.all((b == 0) | (b == 1)) or not np.array_equal(b, v):
        raise ValueError("binary vector entries must be exactly 0 or 1")
    return b


def evaluate(instance: QuboInstance, x) -> float:
    """Return x^T Q x, the full double sum over all index pairs."""
    b = as_binary_vector(x, instance.n).astype(np.float64)
    return float(b @ instance.q @ b)


def symmetrize(raw, label: str = "") -> QuboInstance:
    """Canonicalize a square matrix to its symmetric part (objective-equivalent).

    q[i][j] = (raw[i][j] + raw[j][i]) / 2, which preserves x^T Q x for all x.
    """
    m = _as_matrix(raw)
    return QuboInstance((m + m.T) / 2.0, label)


def scalarize(mo_set: MultiObjectiveSet, weights: Sequence[float]) -> QuboInstance:
    """Weighted elementwise sum of the objectives' matrices.

    Equal weights reproduce the plain summed-matrix scalarization.  Any
    additive constant arising from mean- or ideal-point shifts is dropped;
    it cannot be encoded in a QUBO matrix and does not affect the argmin.
    """
    w = [float(v) for v in weights]
    if len(w) != mo_set.m:
        raise ValueError(f"got {len(w)} weights for {mo_set.m} objectives")
    for k, v in enumerate(w):
        if not (v > 0) or not np.isfinite(v):
            raise ValueError(f"weight {k} must be positive and finite, got {v}")
    acc = np.zeros((mo_set.n, mo_set.n))
    for v, obj in zip(w, mo_set):
        acc += v * obj.q
    label = "+".join(o.label or "q" for o in mo_set)
    return QuboInstance(acc, label)


def bits_to_string(bits) -> str:
    """Serialize a binary vector as '0101...' with index 0 leftmost."""
    return "".join("1" if int(b) else "0" for b in bits)


def bits_from_string(s: str, n: int | None = None) -> np.ndarray:
    if set(s) - {"0", "1"}:
        raise QuboFormatError(f"bit string contains characters other than 0/1: {s!r}")
    v = np.array([int(c) for c in s], dtype=np.int8)
    if n is not None and v.shape[0] != n:
        raise ValueError(f"bit string has length {v.shape[0]}, expected {n}")
    return v


# ---------------------------------------------------------------------------
# Instance file format (JSON).
#
# Single instance: {"n": <int>, "label": <string>, "entries": [[i, j, v], ...]}
# with 0-based indices and i <= j.  Duplicate (i, j) entries are summed.  A
# diagonal entry lands verbatim on q[i][i]; an off-diagonal entry (i, j, v)
# contributes v to the x_i*x_j coefficient and is stored split as
# q[i][j] = q[j][i] = v/2.
#
# Multi-objective file: {"n": <int>, "objectives": [<instance>, ...]}.
# ---------------------------------------------------------------------------


def instance_from_json(obj: dict) -> QuboInstance:
    if not isinstance(obj, dict):
        raise QuboFormatError(f"instance must be a JSON object, got {type(obj).__name__}")
    try:
        n = obj["n"]
        entries = obj["entries"]
    except KeyError as exc:
        raise QuboFormatError(f"instance is missing required key {exc}") from None
    label = obj.get("label", "")
    if not isinstance(n, int) or isinstance(n, bool):
        raise QuboFormatError(f"'n' must be an integer, got {n!r}")
    if n <= 0:
        raise ValueError(f"'n' must be positive, got {n}")
    if not isinstance(entries, list):
        raise QuboFormatError("'entries' must be a list of [i, j, v] triples")
    q = np.zeros((n, n))
    for pos, entry in enumerate(entries):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise QuboFormatError(f"entry {pos} is not an [i, j, v] triple: {entry!r}")
        i, j, v = entry
        if not isinstance(i, int) or not isinstance(j, int) or isinstance(v, (bool, str)):
            raise QuboFormatError(f"entry {pos} has non-numeric fields: {entry!r}")
        if not (0 <= i < n and 0 <= j < n):
            raise QuboFormatError(
                f"entry {pos} indices ({i}, {j}) out of range for n={n}"
            )
        if i > j:
            raise QuboFormatError(
                f"entry {pos} has i > j ({i} > {j}); store upper triangle only"
            )
        v = float(v)
        if i == j:
            q[i, i] += v
        else:
            q[i, j] += v / 2.0
            q[j, i] += v / 2.0
    return QuboInstance(q, label=str(label))


def instance_to_json(instance: QuboInstance) -> dict:
    q = instance.q
    entries: list[list] = []
    for i in range(instance.n):
        if q[i, i] != 0.0:
            entries.append([i, i, float(q[i, i])])
        for j in range(i + 1, instance.n):
            if q[i, j] != 0.0:
                entries.append([i, j, float(2.0 * q[i, j])])
    return {"n": instance.n, "label": instance.label, "entries": entries}


def objective_set_from_json(obj: dict) -> MultiObjectiveSet:
    if not isinstance(obj, dict) or "objectives" not in obj:
        raise QuboFormatError("multi-objective file must contain an 'objectives' list")
    n = obj.get("n")
    members = obj["objectives"]
    if not isinstance(members, list):
        raise QuboFormatError("'objectives' must be a list")
    instances = [instance_from_json(m) for m in members]
    if n is not None:
        for k, inst in enumerate(instances):
            if inst.n != n:
                raise QuboFormatError(
                    f"objective {k} declares n={inst.n}, file declares n={n}"
                )
    return MultiObjectiveSet(tuple(instances))


def objective_set_to_json(mo_set: MultiObjectiveSet) -> dict:
    return {
        "n": mo_set.n,
        "objectives": [instance_to_json(o) for o in mo_set],
    }


def read_instance(path) -> QuboInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(json.load(fh))


def write_instance(instance: QuboInstance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_json(instance), fh)
        fh.write("\n")


def read_objective_set(path) -> MultiObjectiveSet:
    with open(path, "r", encoding="utf-8") as fh:
        return objective_set_from_json(json.load(fh))


def write_objective_set(mo_set: MultiObjectiveSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(objective_set_to_json(mo_set), fh)
        fh.write("\n")
