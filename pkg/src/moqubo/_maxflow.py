"""Float-capacity max-flow on a fixed node set (Dinic's algorithm).

Arcs are stored as paired entries: arc 2k is the forward arc, arc 2k+1 its
residual.  Capacities are real numbers; an arc counts as usable while its
residual capacity exceeds a small epsilon, which keeps the augmentation
loop finite under floating-point arithmetic.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Residual capacity below this is treated as saturated.
EPS = 1e-12


@njit(cache=True, nogil=True)
def _build_adjacency(n_nodes, frm, to):
    m = frm.shape[0]
    head = np.full(n_nodes, -1, dtype=np.int64)
    nxt = np.empty(m, dtype=np.int64)
    for a in range(m):
        nxt[a] = head[frm[a]]
        head[frm[a]] = a
    return head, nxt


@njit(cache=True, nogil=True)
def _dinic(n_nodes, head, nxt, to, cap, s, t, eps):
    level = np.empty(n_nodes, dtype=np.int64)
    queue = np.empty(n_nodes, dtype=np.int64)
    it = np.empty(n_nodes, dtype=np.int64)
    path_arcs = np.empty(n_nodes + 1, dtype=np.int64)
    path_nodes = np.empty(n_nodes + 2, dtype=np.int64)
    flow = 0.0

    while True:
        # BFS level graph on the residual network.
        level[:] = -1
        level[s] = 0
        queue[0] = s
        qh, qt_ = 0, 1
        while qh < qt_:
            u = queue[qh]
            qh += 1
            a = head[u]
            while a != -1:
                v = to[a]
                if cap[a] > eps and level[v] == -1:
                    level[v] = level[u] + 1
                    queue[qt_] = v
                    qt_ += 1
                a = nxt[a]
        if level[t] == -1:
            return flow

        # Blocking flow via iterative DFS with current-arc pointers.
        for u in range(n_nodes):
            it[u] = head[u]
        depth = 0
        path_nodes[0] = s
        while True:
            u = path_nodes[depth]
            if u == t:
                aug = np.inf
                for d in range(depth):
                    a = path_arcs[d]
                    if cap[a] < aug:
                        aug = cap[a]
                for d in range(depth):
                    a = path_arcs[d]
                    cap[a] -= aug
                    cap[a ^ 1] += aug
                flow += aug
                # Retreat to just below the first saturated arc.
                nd = depth
                for d in range(depth):
                    if cap[path_arcs[d]] <= eps:
                        nd = d
                        break
                depth = nd
                continue
            advanced = False
            a = it[u]
            while a != -1:
                v = to[a]
                if cap[a] > eps and level[v] == level[u] + 1:
                    path_arcs[depth] = a
                    path_nodes[depth + 1] = v
                    depth += 1
                    advanced = True
                    break
                a = nxt[a]
                it[u] = a
            if advanced:
                continue
            # Dead end: prune u from this phase.
            level[u] = -1
            if depth == 0:
                break
            depth -= 1
            it[path_nodes[depth]] = nxt[path_arcs[depth]]


def max_flow(n_nodes: int, frm: np.ndarray, to: np.ndarray,
             cap: np.ndarray, s: int, t: int, eps: float = EPS) -> float:
    """Maximum s-t flow.  ``frm``/``to``/``cap`` describe forward arcs only;
    residual arcs are added internally."""
    m = frm.shape[0]
    if m == 0:
        return 0.0
    frm2 = np.empty(2 * m, dtype=np.int64)
    to2 = np.empty(2 * m, dtype=np.int64)
    cap2 = np.zeros(2 * m, dtype=np.float64)
    frm2[0::2] = frm
    to2[0::2] = to
    cap2[0::2] = cap
    frm2[1::2] = to
    to2[1::2] = frm
    head, nxt = _build_adjacency(n_nodes, frm2, to2)
    return float(_dinic(n_nodes, head, nxt, to2, cap2, s, t, eps))
