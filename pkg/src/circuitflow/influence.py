"""Seed-set influence, upper bounds, and authority on top of the solver.

The closed form: a seed set S influences node i by
``f[i] = sum_{s in S} nu_s * B[i, s]`` where ``B`` is the basis matrix
(inverse influence system) and the correction vector ``nu`` solves the
``|S| x |S|`` minor ``B[S][:, S] nu = 1`` — the right-hand side that pins
every seed's own influence at exactly 1.  For a single seed this collapses
to ``nu = 1 / B[s, s]`` and pairwise influence ``B[j, s] / B[s, s]``.

The engine memoizes basis columns (and potential vectors) per
(transmission, damping, options) context so repeated seed-set evaluations —
the greedy optimizer's workload — never re-solve a column.  Memo insertion
is lock-guarded; concurrent readers are safe.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import DampingConfig, TransmissionMatrix
from .solver import (
    DEFAULT_OPTIONS,
    BasisColumn,
    InfluenceVector,
    PotentialVector,
    SolverOptions,
    _validate_nodes,
    basis_column,
    potential_vector,
)

MINOR_SIZE_LIMIT = 10_000


@dataclass(frozen=True)
class SeedCorrection:
    """Correction coefficients for a seed set, aligned with ``seed_order``
    (ascending dense ids).  Each coefficient never exceeds
    ``(1 + lam_s) - (incoming transmission into s from the rest of S)``."""

    seed_order: tuple
    values: np.ndarray


class InfluenceEngine:
    """Influence computations for one (transmission, damping, options)
    context, with memoized basis columns and potential vectors."""

    def __init__(self, tm: TransmissionMatrix, damping: DampingConfig,
                 options: SolverOptions = DEFAULT_OPTIONS):
        if damping.n != tm.n:
            raise ValidationError(
                f"damping has {damping.n} entries but the graph has {tm.n} nodes"
            )
        self.tm = tm
        self.damping = damping
        self.options = options
        self._columns: dict[int, BasisColumn] = {}
        self._potentials: dict[frozenset, PotentialVector] = {}
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self.tm.n

    @property
    def all_nodes(self) -> range:
        return range(self.tm.n)

    def basis_column(self, node: int) -> BasisColumn:
        node = int(node)
        col = self._columns.get(node)
        if col is None:
            col = basis_column(self.tm, self.damping, node, self.options)
            with self._lock:
                col = self._columns.setdefault(node, col)
        return col

    def potential_vector(self, targets) -> PotentialVector:
        key = frozenset(int(t) for t in targets)
        pv = self._potentials.get(key)
        if pv is None:
            pv = potential_vector(self.tm, self.damping, key, self.options)
            with self._lock:
                pv = self._potentials.setdefault(key, pv)
        return pv

    def cached_column_count(self) -> int:
        return len(self._columns)

    def seed_correction(self, seeds) -> SeedCorrection:
        """Solve the seed minor by dense partial-pivot elimination."""
        S = _validate_nodes(seeds, self.n, "seed set")
        if len(S) > MINOR_SIZE_LIMIT:
            raise ValidationError(
                f"seed set of size {len(S)} exceeds the dense minor limit "
                f"({MINOR_SIZE_LIMIT})"
            )
        minor = np.empty((len(S), len(S)))
        for b, s in enumerate(S):
            minor[:, b] = self.basis_column(s).values[S]
        nu = np.linalg.solve(minor, np.ones(len(S)))
        return SeedCorrection(seed_order=tuple(S), values=nu)

    def influence_vector(self, seeds) -> InfluenceVector:
        """Closed-form influence of ``seeds`` on every node (seed entries
        exactly 1)."""
        correction = self.seed_correction(seeds)
        S = list(correction.seed_order)
        f = np.zeros(self.n)
        for nu_s, s in zip(correction.values, S):
            f += nu_s * self.basis_column(s).values
        f[S] = 1.0
        return InfluenceVector(seed_set=frozenset(S), values=f)

    def influence_pair(self, source: int, target: int) -> float:
        """Influence of the singleton {source} on target."""
        col = self.basis_column(int(source))
        if not (0 <= int(target) < self.n):
            raise ValidationError(f"node {target} outside 0..{self.n - 1}")
        if int(target) == int(source):
            return 1.0
        return float(col.values[int(target)] / col.values[col.node])

    def influence_set_to_set(self, seeds, targets) -> float:
        """Sum of the seed-set influence over ``targets`` (ascending-index
        summation, so targets=all equals InfluenceVector.total exactly)."""
        tgt = _validate_nodes(targets, self.n, "target set")
        return float(np.sum(self.influence_vector(seeds).values[tgt]))

    def upper_bound(self, seeds, targets) -> float:
        """One-step-removal bound on set-to-set influence: each seed's
        correction is replaced by its ceiling
        ``(1 + lam_j) - incoming transmission from S``, then weighted by the
        seed's potential toward the targets.  Needs no minor solve; exact on
        seed sets whose correction ceilings are tight (e.g. cycle-free
        graphs), a strict over-estimate otherwise."""
        S = _validate_nodes(seeds, self.n, "seed set")
        in_S = np.zeros(self.n, dtype=bool)
        in_S[S] = True
        p = self.potential_vector(targets).values
        total = 0.0
        for j in S:
            srcs, vals = self.tm.in_arcs(j)
            from_S = float(np.sum(vals[in_S[srcs]])) if srcs.size else 0.0
            total += ((1.0 + self.damping.values[j]) - from_S) * p[j]
        return float(total)

    def authority(self, node: int, targets) -> float:
        """Influence-per-unit-self-potential of ``node`` toward ``targets``:
        potential divided by the node's own basis diagonal.  Equals the
        singleton set-to-set influence."""
        node = int(node)
        if not (0 <= node < self.n):
            raise ValidationError(f"node {node} outside 0..{self.n - 1}")
        p = self.potential_vector(targets).values[node]
        return float(p / self.basis_column(node).values[node])
