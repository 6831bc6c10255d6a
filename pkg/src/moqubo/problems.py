"""Random benchmark instances: preferential-attachment graphs and four
QUBO families built on them.

Three max-cut variants differ only in their edge-weight law (Beta(0.2, 0.8)
on the graph's own edges; Bernoulli(0.5) or uniform {1..5} on the complete
graph, with original edges pinned to the largest weight), plus a subset-sum
problem whose item weights are vertex degrees.  All sampling uses the
counter-based Philox generator with SeedSequence stream splitting, and
weights are drawn in row-major order over pairs i < j, so identical seeds
reproduce identical matrices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import QuboInstance


class Family(str, enum.Enum):
    """The four QUBO problem families."""

    MC01 = "mc01"      # max cut, Beta(0.2, 0.8) weights on graph edges
    MCB = "mcb"        # max cut on complete graph, Bernoulli(0.5), G-edges = 1
    MCZ = "mcz"        # max cut on complete graph, uniform {1..5}, G-edges = 5
    SUBSUM = "subsum"  # subset sum over vertex degrees, target = 1/4 total


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..n-1 with optional edge weights."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: dict[tuple[int, int], float] | None = None

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) references node >= n={self.n}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(
            self, "edges", tuple(sorted((min(i, j), max(i, j)) for i, j in self.edges))
        )

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency_mask(self) -> np.ndarray:
        mask = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            mask[i, j] = mask[j, i] = True
        return mask


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters for one problem-generation request."""

    n: int
    attach_m: int
    seed: int
    families: tuple[Family, ...] = tuple(Family)

    def __post_init__(self):
        if not (1 <= self.attach_m < self.n):
            raise ValueError(
                f"need 1 <= attach_m < n, got attach_m={self.attach_m}, n={self.n}"
            )
        object.__setattr__(
            self, "families", tuple(Family(f) for f in self.families)
        )

    @staticmethod
    def from_json(obj: dict) -> "GeneratorConfig":
        return GeneratorConfig(
            n=int(obj["n"]),
            attach_m=int(obj.get("attach_m", 2)),
            seed=int(obj["seed"]),
            families=tuple(Family(str(f).lower()) for f in obj.get(
                "families", [f.value for f in Family])),
        )


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.Philox(ss))


def barabasi_albert(n: int, attach_m: int, seed) -> Graph:
    """Preferential-attachment graph via the repeated-nodes urn method.

    Starts from attach_m isolated nodes; each new node attaches to attach_m
    distinct existing nodes drawn proportionally to degree.  The first
    arriving node therefore links to all initial nodes, which keeps the
    graph connected.  Deterministic given the seed.
    """
    if not (1 <= attach_m < n):
        raise ValueError(f"need 1 <= attach_m < n, got attach_m={attach_m}, n={n}")
    rng = _rng(seed)
    edges: list[tuple[int, int]] = []
    targets = list(range(attach_m))
    repeated: list[int] = []
    for source in range(attach_m, n):
        for t in targets:
            edges.append((t, source))
        repeated.extend(targets)
        repeated.extend([source] * attach_m)
        chosen: set[int] = set()
        while len(chosen) < attach_m:
            chosen.add(repeated[int(rng.integers(len(repeated)))])
        targets = sorted(chosen)
    return Graph(n=n, edges=tuple(edges))


def sample_beta(rng: np.random.Generator, a: float, b: float, size: int) -> np.ndarray:
    """Beta(a, b) samples via Johnk's rejection method.

    Valid for any positive shapes and numerically safe for a, b < 1:
    draw U, V uniform, set X = U^(1/a), Y = V^(1/b), accept when
    X + Y <= 1, return X / (X + Y).
    """
    out = np.empty(size)
    filled = 0
    while filled < size:
        k = max(size - filled, 16)
        u = rng.random(k)
        v = rng.random(k)
        x = u ** (1.0 / a)
        y = v ** (1.0 / b)
        tot = x + y
        ok = (tot <= 1.0) & (tot > 0.0)
        vals = x[ok] / tot[ok]
        take = min(vals.shape[0], size - filled)
        out[filled:filled + take] = vals[:take]
        filled += take
    return out


def _maxcut_qubo(weights: np.ndarray, label: str) -> QuboInstance:
    """Max-cut QUBO from a symmetric zero-diagonal weight matrix.

    f(x) = sum_{i<j} 2 w_ij x_i x_j - sum_i x_i sum_{j != i} w_ij, so that
    -f(x) is the weight of the cut induced by x.
    """
    q = weights - np.diag(weights.sum(axis=1))
    return QuboInstance(q, label)


def gen_mc01(g: Graph, seed) -> QuboInstance:
    """Max cut with Beta(0.2, 0.8) weights on the graph's edges only."""
    rng = _rng(seed)
    w = np.zeros((g.n, g.n))
    samples = sample_beta(rng, 0.2, 0.8, len(g.edges))
    for (i, j), wij in zip(g.edges, samples):
        w[i, j] = w[j, i] = wij
    return _maxcut_qubo(w, Family.MC01.value)


def _complete_graph_weights(g: Graph, sampler) -> np.ndarray:
    """Weights over all pairs of the complete graph, row-major over i < j,
    with the graph's own edges overwritten afterwards by the family rule."""
    iu, ju = np.triu_indices(g.n, k=1)
    vals = sampler(iu.shape[0])
    w = np.zeros((g.n, g.n))
    w[iu, ju] = vals
    w += w.T
    return w


def gen_mcb(g: Graph, seed) -> QuboInstance:
    """Max cut on the complete graph; Bernoulli(0.5) weights, G-edges are 1."""
    rng = _rng(seed)
    w = _complete_graph_weights(g, lambda k: rng.integers(0, 2, k).astype(np.float64))
    for i, j in g.edges:
        w[i, j] = w[j, i] = 1.0
    return _maxcut_qubo(w, Family.MCB.value)


def gen_mcz(g: Graph, seed) -> QuboInstance:
    """Max cut on the complete graph; uniform {1..5} weights, G-edges are 5."""
    rng = _rng(seed)
    w = _complete_graph_weights(g, lambda k: rng.integers(1, 6, k).astype(np.float64))
    for i, j in g.edges:
        w[i, j] = w[j, i] = 5.0
    return _maxcut_qubo(w, Family.MCZ.value)


def gen_subsum(g: Graph) -> QuboInstance:
    """Subset sum over vertex degrees with target tau = sum(degrees) / 4.

    f(x) = sum_ij w_i w_j x_i x_j - 2 tau sum_i w_i x_i, which equals
    (sum_i w_i x_i - tau)^2 - tau^2.  tau stays real-valued (no rounding).
    """
    w = g.degrees().astype(np.float64)
    tau = 0.25 * float(w.sum())
    q = np.outer(w, w) - np.diag(2.0 * tau * w)
    return QuboInstance(q, Family.SUBSUM.value)


def generate(family: Family, g: Graph, seed) -> QuboInstance:
    """Build one family instance on the given graph."""
    family = Family(family)
    if family is Family.MC01:
        return gen_mc01(g, seed)
    if family is Family.MCB:
        return gen_mcb(g, seed)
    if family is Family.MCZ:
        return gen_mcz(g, seed)
    return gen_subsum(g)
