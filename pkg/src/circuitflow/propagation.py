"""Cascade simulation and stochastic fixed-point models, plus model
similarity scoring.

Monte-Carlo cascades follow the independent-cascade rule on the transmission
matrix: once a node activates it gets one chance to activate each out-arc
target, succeeding with the arc's strength.  Each trial draws from its own
RNG stream derived from ``(rng_seed, trial_index)``, so results are
reproducible bit-for-bit and trials can be batched across threads (the
``CIRCUITFLOW_THREADS`` environment variable caps the worker count; counts
are integers, so the reduction is exact regardless of batching).

``ic_exact`` enumerates all live-arc subsets instead of sampling — feasible
only for tiny graphs, hence a hard guard on the arc count.

``st_fixed_point`` iterates the noisy-or update
``f[j] <- 1 - prod_k (1 - t_kj f[k])`` synchronously from zeros with seeds
pinned to 1.  At the fixed point each non-seed value f with in-flow
``o = sum_k t_kj f[k] > 0`` satisfies ``o/2 < f <= o`` (alternating-series
bracket; nodes with no in-flow sit at exactly 0).
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError, ValidationError
from .graph import TransmissionMatrix
from .solver import DEFAULT_OPTIONS, SolverOptions, _validate_nodes

EXACT_ARC_LIMIT = 20
THREADS_ENV_VAR = "CIRCUITFLOW_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise ValidationError(
            f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
        ) from None
    if count < 1:
        raise ValidationError(
            f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
        )
    return count


@dataclass(frozen=True)
class SimulationResult:
    seed_set: frozenset
    activation_prob: np.ndarray
    spread: float
    trials: int


@dataclass(frozen=True)
class ExactCascadeResult:
    seed_set: frozenset
    activation_prob: np.ndarray
    spread: float


@dataclass(frozen=True)
class StInfluenceVector:
    seed_set: frozenset
    values: np.ndarray
    iterations_used: int


def _multi_arange(starts: np.ndarray, counts: np.ndarray, total: int) -> np.ndarray:
    """Concatenated ranges [starts[k], starts[k]+counts[k]) as one array."""
    offsets = np.zeros(counts.shape[0], dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    return np.arange(total, dtype=np.int64) - np.repeat(offsets, counts) \
        + np.repeat(starts, counts)


def _cascade_once(tm: TransmissionMatrix, seed_arr: np.ndarray,
                  rng: np.random.Generator) -> np.ndarray:
    active = np.zeros(tm.n, dtype=bool)
    active[seed_arr] = True
    frontier = seed_arr
    while frontier.size:
        starts = tm.row_indptr[frontier]
        counts = tm.row_indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        arcs = _multi_arange(starts, counts, total)
        hits = rng.random(total) < tm.row_vals[arcs]
        cand = tm.row_dst[arcs][hits]
        cand = cand[~active[cand]]
        if cand.size == 0:
            break
        frontier = np.unique(cand)
        active[frontier] = True
    return active


def _seed_tuple(rng_seed) -> tuple:
    if isinstance(rng_seed, tuple):
        return tuple(int(v) for v in rng_seed)
    return (int(rng_seed),)


def ic_simulate(tm: TransmissionMatrix, seeds, trials: int,
                rng_seed) -> SimulationResult:
    """Estimate activation probabilities over ``trials`` independent cascades."""
    S = _validate_nodes(seeds, tm.n, "seed set")
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    root = _seed_tuple(rng_seed)
    seed_arr = np.asarray(S, dtype=np.int64)

    def run_block(lo: int, hi: int) -> np.ndarray:
        counts = np.zeros(tm.n, dtype=np.int64)
        for trial in range(lo, hi):
            rng = np.random.default_rng(root + (trial,))
            counts += _cascade_once(tm, seed_arr, rng)
        return counts

    workers = min(worker_count(), trials)
    if workers == 1:
        counts = run_block(0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=int)
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = pool.map(run_block, bounds[:-1], bounds[1:])
            counts = sum(blocks)
    prob = counts / float(trials)
    prob[seed_arr] = 1.0
    return SimulationResult(
        seed_set=frozenset(S),
        activation_prob=prob,
        spread=float(np.sum(prob)),
        trials=int(trials),
    )


def ic_exact(tm: TransmissionMatrix, seeds) -> ExactCascadeResult:
    """Exact activation probabilities by live-arc enumeration (2^arcs
    outcomes; refuses more than EXACT_ARC_LIMIT arcs)."""
    S = _validate_nodes(seeds, tm.n, "seed set")
    m = tm.arc_count
    if m > EXACT_ARC_LIMIT:
        raise ValidationError(
            f"exact cascade enumeration supports at most {EXACT_ARC_LIMIT} "
            f"arcs, graph has {m}"
        )
    arc_src = np.repeat(np.arange(tm.n), np.diff(tm.row_indptr))
    arc_dst = tm.row_dst
    arc_p = tm.row_vals
    prob = np.zeros(tm.n)
    adj = [[] for _ in range(tm.n)]
    for mask in range(1 << m):
        weight = 1.0
        for k in range(m):
            weight *= arc_p[k] if (mask >> k) & 1 else 1.0 - arc_p[k]
            if weight == 0.0:
                break
        if weight == 0.0:
            continue
        for lst in adj:
            lst.clear()
        for k in range(m):
            if (mask >> k) & 1:
                adj[arc_src[k]].append(arc_dst[k])
        reached = np.zeros(tm.n, dtype=bool)
        reached[S] = True
        stack = list(S)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not reached[v]:
                    reached[v] = True
                    stack.append(v)
        prob[reached] += weight
    prob[S] = 1.0
    return ExactCascadeResult(
        seed_set=frozenset(S),
        activation_prob=prob,
        spread=float(np.sum(prob)),
    )


def st_fixed_point(tm: TransmissionMatrix, seeds,
                   options: SolverOptions = DEFAULT_OPTIONS) -> StInfluenceVector:
    """Noisy-or fixed point with seeds pinned to 1 (synchronous sweeps from
    zeros; monotone, so this is the least fixed point)."""
    S = _validate_nodes(seeds, tm.n, "seed set")
    seed_mask = np.zeros(tm.n, dtype=bool)
    seed_mask[S] = True
    empty_col = np.diff(tm.col_indptr) == 0
    f = np.zeros(tm.n)
    f[S] = 1.0
    for iteration in range(1, options.max_iterations + 1):
        if tm.arc_count:
            # trailing 1.0 sentinel keeps reduceat in bounds for empty
            # trailing columns and is a harmless factor on the last segment
            per_arc = np.append(1.0 - tm.col_vals * f[tm.col_src], 1.0)
            prod = np.multiply.reduceat(per_arc, tm.col_indptr[:-1])
            prod[empty_col] = 1.0
        else:
            prod = np.ones(tm.n)
        nxt = 1.0 - prod
        nxt[S] = 1.0
        change = float(np.max(np.abs(nxt - f))) if tm.n else 0.0
        f = nxt
        if change < options.tolerance:
            return StInfluenceVector(frozenset(S), f, iteration)
    raise NonConvergenceError(
        f"noisy-or fixed point did not reach tolerance {options.tolerance} "
        f"within {options.max_iterations} iterations (last change {change:.3e})",
        residual=change,
        iterations=options.max_iterations,
    )


def sample_seed_sets(n: int, count: int, rng_seed) -> list[frozenset]:
    """Random seed sets: size uniform on 1..min(10, n), members uniform
    without replacement."""
    if n < 1:
        raise ValidationError("graph has no nodes to sample from")
    if count < 1:
        raise ValidationError(f"need at least one sample set, got {count}")
    rng = np.random.default_rng(_seed_tuple(rng_seed))
    top = min(10, n)
    out = []
    for _ in range(count):
        size = int(rng.integers(1, top + 1))
        out.append(frozenset(int(v) for v in rng.choice(n, size, replace=False)))
    return out


def lc_provider(engine):
    """Influence vectors from the linear-circuit engine."""
    return lambda seeds: engine.influence_vector(seeds).values


def st_provider(tm: TransmissionMatrix, options: SolverOptions = DEFAULT_OPTIONS):
    return lambda seeds: st_fixed_point(tm, seeds, options).values


def ic_mc_provider(tm: TransmissionMatrix, trials: int, rng_seed):
    """Monte-Carlo activation vectors.  Each distinct seed set gets its own
    stream derived from (rng_seed, sorted members), and vectors are memoized
    so sweeping a model parameter reuses identical estimates."""
    root = _seed_tuple(rng_seed)
    memo: dict[frozenset, np.ndarray] = {}

    def provider(seeds):
        key = frozenset(int(s) for s in seeds)
        vec = memo.get(key)
        if vec is None:
            vec = ic_simulate(tm, key, trials, root + tuple(sorted(key))).activation_prob
            memo[key] = vec
        return vec

    return provider


def ic_exact_provider(tm: TransmissionMatrix):
    memo: dict[frozenset, np.ndarray] = {}

    def provider(seeds):
        key = frozenset(int(s) for s in seeds)
        vec = memo.get(key)
        if vec is None:
            vec = ic_exact(tm, key).activation_prob
            memo[key] = vec
        return vec

    return provider


def model_similarity(provider_a, provider_b, sample_sets) -> float:
    """Mean cosine similarity between the two models' influence vectors over
    the given seed sets."""
    if not sample_sets:
        raise ValidationError("similarity needs at least one sample set")
    total = 0.0
    for seeds in sample_sets:
        a = provider_a(seeds)
        b = provider_b(seeds)
        total += float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))
    return total / len(sample_sets)
