"""QUBO minimization: an exact solver for oracle duty and a restart
simulated-annealing heuristic.

The exact solver walks all assignments in Gray-code order, so each step
flips one bit and updates the objective in O(n) from cached row sums.
The annealer performs single-bit-flip Metropolis sweeps under geometric
cooling; each run is deterministic given its seed (a splitmix64 stream,
so runs are independent and thread-safe).  A wall-clock budget is
honored between temperature levels; with no time limit the sweep budget
is fixed and results are bit-reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import QuboInstance, bits_to_string, evaluate

BRUTE_FORCE_LIMIT = 26
ENUMERATION_LIMIT = 20


@njit(cache=True, nogil=True)
def _gray_minimize(q):
    n = q.shape[0]
    x = np.zeros(n, dtype=np.int8)
    best_x = np.zeros(n, dtype=np.int8)
    s = np.zeros(n)  # s[k] = sum_j q[k, j] * x[j]
    f = 0.0
    best = 0.0
    steps = np.int64(1) << n
    for t in range(1, steps):
        # lowest set bit of t is the Gray-code flip position
        k = 0
        tt = t
        while tt & 1 == 0:
            tt >>= 1
            k += 1
        old = x[k]
        sign = 1.0 - 2.0 * old
        f += sign * (q[k, k] + 2.0 * (s[k] - q[k, k] * old))
        x[k] = 1 - old
        for j in range(n):
            s[j] += sign * q[j, k]
        if f < best:
            best = f
            best_x[:] = x
        elif f == best:
            # tie-break to the lexicographically lowest vector
            for j in range(n):
                if x[j] != best_x[j]:
                    if x[j] < best_x[j]:
                        best_x[:] = x
                    break
    return best_x, best


def brute_force(instance: QuboInstance) -> tuple[np.ndarray, float]:
    """Exact global minimizer (bits, value) for n <= 26.

    Ties in the minimum value resolve to the lexicographically lowest
    vector.  The returned value is recomputed from the returned bits, so
    it is exactly ``evaluate(instance, bits)``.
    """
    if instance.n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute_force is limited to n <= {BRUTE_FORCE_LIMIT} "
            f"(got n={instance.n}); use anneal() instead"
        )
    bits, _ = _gray_minimize(instance.q)
    return bits, evaluate(instance, bits)


def enumerate_objective(instance: QuboInstance) -> np.ndarray:
    """Objective value of every assignment, indexed so that assignment b
    has x_i = (b >> i) & 1.  Exact per-vector evaluation; n <= 20."""
    n = instance.n
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    total = 1 << n
    out = np.empty(total)
    chunk = 1 << 14
    cols = np.arange(n)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        xs = ((idx[:, None] >> cols) & 1).astype(np.float64)
        out[idx] = np.einsum("bi,ij,bj->b", xs, instance.q, xs)
    return out


# --- simulated annealing ---------------------------------------------------

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True, nogil=True, inline="always")
def _splitmix64(state):
    state = (state + np.uint64(0x9E3779B97F4A7C15)) & _MASK64
    z = state
    z = ((z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4B9FE)) & _MASK64
    z = ((z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)) & _MASK64
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True, nogil=True, inline="always")
def _uniform01(state):
    state, z = _splitmix64(state)
    return state, (z >> np.uint64(11)) * 1.1102230246251565e-16  # 2**-53


@njit(cache=True, nogil=True)
def _anneal_init(q, state):
    n = q.shape[0]
    x = np.empty(n, dtype=np.int8)
    for i in range(n):
        state, z = _splitmix64(state)
        x[i] = np.int8(z & np.uint64(1))
    s = np.zeros(n)
    for k in range(n):
        acc = 0.0
        for j in range(n):
            acc += q[k, j] * x[j]
        s[k] = acc
    f = 0.0
    for k in range(n):
        f += x[k] * s[k]
    return x, s, f, state


@njit(cache=True, nogil=True)
def _anneal_level(q, x, s, f, best_x, best_f, temp, sweeps, state):
    """Run ``sweeps`` Metropolis sweeps at one temperature; mutates x, s,
    best_x in place and returns (f, best_f, state, evaluations)."""
    n = q.shape[0]
    un = np.uint64(n)
    evals = 0
    for _ in range(sweeps):
        for _ in range(n):
            state, z = _splitmix64(state)
            k = np.int64(z % un)
            old = x[k]
            sign = 1.0 - 2.0 * old
            delta = sign * (q[k, k] + 2.0 * (s[k] - q[k, k] * old))
            evals += 1
            accept = delta <= 0.0
            if not accept:
                ratio = delta / temp
                if ratio < 700.0:
                    state, u = _uniform01(state)
                    accept = u < np.exp(-ratio)
            if accept:
                f += delta
                x[k] = 1 - old
                for j in range(n):
                    s[j] += sign * q[j, k]
                if f < best_f:
                    best_f = f
                    best_x[:] = x
    return f, best_f, state, evals


@dataclass(frozen=True)
class SolveConfig:
    """Annealer settings.

    A ``None`` temperature endpoint or cooling factor is resolved per
    instance: t_start = n * max|Q|, t_end = 1e-3 * median nonzero |Q|,
    and the factor is chosen so the schedule spans 200 temperature
    levels of ``sweeps_per_temp`` sweeps each.  ``time_limit_ms`` caps
    wall-clock time per run (checked between levels); leave it None for
    a fixed sweep budget and bit-deterministic results.
    """

    runs: int = 20
    seed: int = 0
    sweeps_per_temp: int = 4
    time_limit_ms: int | None = None
    t_start: float | None = None
    t_end: float | None = None
    cool_factor: float | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.sweeps_per_temp < 1:
            raise ValueError("sweeps_per_temp must be >= 1")
        if self.time_limit_ms is not None and self.time_limit_ms <= 0:
            raise ValueError(f"time_limit_ms must be positive, got {self.time_limit_ms}")
        if self.t_start is not None and self.t_end is not None:
            if not (self.t_start > self.t_end > 0):
                raise ValueError("need t_start > t_end > 0")
        if self.cool_factor is not None and not (0 < self.cool_factor < 1):
            raise ValueError("cool_factor must lie in (0, 1)")

    def to_json(self) -> dict:
        return {
            "runs": self.runs,
            "seed": self.seed,
            "sweeps_per_temp": self.sweeps_per_temp,
            "time_limit_ms": self.time_limit_ms,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "cool_factor": self.cool_factor,
        }


N_TEMP_LEVELS = 200


def _temperature_schedule(q: np.ndarray, cfg: SolveConfig) -> np.ndarray:
    absq = np.abs(q)
    peak = float(absq.max())
    if peak == 0.0:
        return np.array([])  # degenerate instance, nothing to anneal
    t_start = cfg.t_start if cfg.t_start is not None else peak * q.shape[0]
    if cfg.t_end is not None:
        t_end = cfg.t_end
    else:
        nonzero = absq[absq > 0]
        t_end = 1e-3 * float(np.median(nonzero))
    if not (t_start > t_end > 0):
        raise ValueError(f"resolved schedule invalid: t_start={t_start}, t_end={t_end}")
    if cfg.cool_factor is not None:
        factor = cfg.cool_factor
        levels = int(np.ceil(np.log(t_end / t_start) / np.log(factor))) + 1
        levels = max(levels, 1)
    else:
        levels = N_TEMP_LEVELS
        factor = (t_end / t_start) ** (1.0 / (levels - 1))
    return t_start * factor ** np.arange(levels)


@dataclass(frozen=True)
class RunResult:
    seed: int  # the derived 64-bit stream seed for this run
    best_value: float
    bits: np.ndarray
    trajectory: np.ndarray  # best-so-far after each temperature level


@dataclass(frozen=True)
class SolveOutcome:
    """Best solution over all runs plus the per-run bests."""

    best: np.ndarray
    best_value: float
    all_solutions: list[np.ndarray]
    evaluations: int
    runs: list[RunResult]

    def to_json(self, cfg: SolveConfig) -> dict:
        return {
            "runs": [
                {
                    "seed": r.seed,
                    "best_value": r.best_value,
                    "bits": bits_to_string(r.bits),
                }
                for r in self.runs
            ],
            "config": cfg.to_json(),
        }


def _run_seed(master: int, run_index: int) -> int:
    ss = np.random.SeedSequence(int(master), spawn_key=(int(run_index),))
    return int(ss.generate_state(1, np.uint64)[0])


def anneal(instance: QuboInstance, cfg: SolveConfig) -> SolveOutcome:
    """Minimize with restart simulated annealing.

    Each run starts from a random vector and performs single-bit-flip
    Metropolis sweeps with incremental objective updates, cooled
    geometrically.  Per-run seeds derive from ``cfg.seed`` and the run
    index, so the outcome is reproducible with no time limit set.
    """
    q = instance.q
    n = instance.n
    temps = _temperature_schedule(q, cfg)
    deadline = None
    if cfg.time_limit_ms is not None:
        per_run = cfg.time_limit_ms / 1000.0
    results: list[RunResult] = []
    total_evals = 0
    for r in range(cfg.runs):
        run_seed = _run_seed(cfg.seed, r)
        state = np.uint64(run_seed)
        if temps.shape[0] == 0:
            bits = np.zeros(n, dtype=np.int8)
            results.append(RunResult(seed=run_seed, best_value=0.0, bits=bits,
                                     trajectory=np.zeros(1)))
            continue
        if cfg.time_limit_ms is not None:
            deadline = time.monotonic() + per_run
        x, s, f, state = _anneal_init(q, state)
        best_x = x.copy()
        best_f = f
        traj = np.empty(temps.shape[0])
        levels_done = 0
        for li, temp in enumerate(temps):
            f, best_f, state, ev = _anneal_level(
                q, x, s, f, best_x, best_f, temp, cfg.sweeps_per_temp,
                np.uint64(state),
            )
            total_evals += ev
            traj[li] = best_f
            levels_done = li + 1
            if deadline is not None and time.monotonic() >= deadline:
                break
        value = evaluate(instance, best_x)
        results.append(RunResult(seed=run_seed, best_value=value, bits=best_x,
                                 trajectory=traj[:levels_done].copy()))
    best_run = min(results, key=lambda r: (r.best_value, bits_to_string(r.bits)))
    return SolveOutcome(
        best=best_run.bits,
        best_value=best_run.best_value,
        all_solutions=[r.bits for r in results],
        evaluations=total_evals,
        runs=results,
    )
