"""Independent oracles shared across the test modules.

Everything here recomputes quantities by definition (double loops,
exhaustive enumeration, Monte-Carlo sampling) so the library paths are
checked against something that shares none of their code.
"""

import itertools

import numpy as np

# pass/fail lines collected by the acceptance tests; printed by the
# terminal-summary hook in conftest.py
ACCEPTANCE_LINES: list[str] = []


def double_loop_value(q, x):
    """x^T Q x by explicit double loop over all index pairs."""
    n = len(x)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += q[i][j] * x[i] * x[j]
    return total


def all_assignments(n):
    """All binary vectors of length n, one per row, lexicographic order."""
    return np.array(list(itertools.product([0, 1], repeat=n)), dtype=np.int8)


def exhaustive_values(q):
    """Objective value of every assignment via independent evaluation."""
    xs = all_assignments(q.shape[0]).astype(np.float64)
    return np.einsum("bi,ij,bj->b", xs, np.asarray(q, dtype=np.float64), xs)


def exhaustive_min(q):
    vals = exhaustive_values(q)
    return float(vals.min())


def exhaustive_max(q):
    vals = exhaustive_values(q)
    return float(vals.max())


def argmin_set(q, rel_tol=1e-9):
    """Indices (as bit rows) of all assignments within tolerance of the min."""
    vals = exhaustive_values(q)
    lo = vals.min()
    tol = rel_tol * max(1.0, abs(lo))
    rows = all_assignments(q.shape[0])
    return {tuple(int(b) for b in rows[i]) for i in np.nonzero(vals <= lo + tol)[0]}


def explicit_case_variance(q):
    """Variance from the explicit case-enumeration formula (third oracle):

    sum_i [Q_ii^2/4 + sum_{k != i} Q_ii (Q_ki + Q_ik)/8]
      + sum_{i != j} Q_ij [3 (Q_ij + Q_ji)/16 + (Q_ii + Q_jj)/8]
      + sum_{i != j} Q_ij sum_{k not in {i,j}} (Q_ki + Q_kj + Q_ik + Q_jk)/16
    """
    q = np.asarray(q, dtype=np.float64)
    n = q.shape[0]
    total = 0.0
    for i in range(n):
        total += 0.25 * q[i, i] ** 2
        for k in range(n):
            if k != i:
                total += 0.125 * q[i, i] * (q[k, i] + q[i, k])
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            total += q[i, j] * (3.0 / 16.0 * (q[i, j] + q[j, i])
                                + 0.125 * (q[i, i] + q[j, j]))
            for k in range(n):
                if k != i and k != j:
                    total += q[i, j] * (q[k, i] + q[k, j] + q[i, k] + q[j, k]) / 16.0
    return total


def cut_weight(weights, x):
    """Total weight of edges crossing the cut induced by x (dense matrix)."""
    n = len(x)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if x[i] != x[j]:
                total += weights[i][j]
    return total


def naive_front(points):
    """Non-dominated subset by definitional pairwise scan (minimization);
    exact duplicates collapse to the first occurrence."""
    kept = []
    seen = set()
    for i, p in enumerate(points):
        key = tuple(p)
        if key in seen:
            continue
        dominated = False
        for j, r in enumerate(points):
            if j == i:
                continue
            if all(rv <= pv for rv, pv in zip(r, p)) and any(
                rv < pv for rv, pv in zip(r, p)
            ):
                dominated = True
                break
        if not dominated:
            kept.append(i)
            seen.add(key)
    return [points[i] for i in kept]


def monte_carlo_hypervolume(points, ref, samples, seed):
    """Union-of-boxes volume estimate and its standard error."""
    pts = np.asarray(points, dtype=np.float64)
    refv = np.asarray(ref, dtype=np.float64)
    lo = pts.min(axis=0)
    box = float(np.prod(refv - lo))
    if box == 0.0:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    chunk = 100_000
    while done < samples:
        k = min(chunk, samples - done)
        y = lo + (refv - lo) * rng.random((k, refv.shape[0]))
        dom = np.zeros(k, dtype=bool)
        for p in pts:
            dom |= np.all(p <= y, axis=1)
        hits += int(dom.sum())
        done += k
    p_hat = hits / samples
    return box * p_hat, box * float(np.sqrt(p_hat * (1 - p_hat) / samples))


def connected(n, edges):
    """Breadth-first connectivity check on an edge list."""
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return len(seen) == n
