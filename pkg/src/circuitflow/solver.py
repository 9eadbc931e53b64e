"""Sparse Gauss-Seidel solver and the influence linear systems built on it.

Two sparse systems recur throughout the package, both derived from a
transmission matrix ``T`` and damping vector ``lam``:

* the *influence system* ``I + diag(lam) - T.T`` — row ``j`` couples to the
  arcs *into* j; its inverse columns ("basis columns") compose seed-set
  influence vectors;
* the *potential system* ``I + diag(lam) - T`` — row ``i`` couples to the
  arcs *out of* i; solving it against a target-set indicator yields each
  node's potential toward those targets (a column sum of the basis matrix).

Both matrices have positive diagonals, nonpositive off-diagonals, and are
strictly diagonally dominant — the influence system by rows, the potential
system by columns (column sums of ``T`` never exceed one).  Either form of
strict dominance makes these M-matrices, for which forward Gauss-Seidel
converges from any start; the solver checks row-or-column dominance up front
and refuses anything else.

Sweeps visit rows in ascending index order, updated entries feed later rows
within the same sweep, iteration starts from zeros (unless a start vector is
pinned), and convergence means the largest absolute per-entry update fell
below tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import gs_sweep
from .errors import NonConvergenceError, ValidationError
from .graph import DampingConfig, TransmissionMatrix

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not (self.tolerance > 0.0):
            raise ValidationError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be at least 1")


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class SparseRowSystem:
    """Square system ``A x = b`` with the positive diagonal stored separately
    and off-diagonal entries (actual signed values) in CSR layout."""

    diag: np.ndarray
    indptr: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    @property
    def n(self) -> int:
        return int(self.diag.shape[0])

    @classmethod
    def from_rows(cls, diag, rows) -> "SparseRowSystem":
        """Build from per-row lists of ``(col, value)`` off-diagonal entries."""
        diag = np.asarray(diag, dtype=np.float64)
        n = diag.shape[0]
        if len(rows) != n:
            raise ValidationError("row count does not match diagonal length")
        indptr = np.zeros(n + 1, dtype=np.int64)
        cols, vals = [], []
        for j, row in enumerate(rows):
            for c, v in row:
                if not (0 <= c < n):
                    raise ValidationError(f"column {c} outside 0..{n - 1}")
                if c == j:
                    raise ValidationError(
                        f"row {j}: diagonal entries belong in `diag`, not the "
                        "off-diagonal list"
                    )
                cols.append(c)
                vals.append(v)
            indptr[j + 1] = len(cols)
        return cls(diag, indptr,
                   np.asarray(cols, dtype=np.int64),
                   np.asarray(vals, dtype=np.float64))

    def offdiag_row_sums(self) -> np.ndarray:
        sums = np.zeros(self.n)
        counts = np.diff(self.indptr)
        np.add.at(sums, np.repeat(np.arange(self.n), counts), np.abs(self.vals))
        return sums

    def offdiag_col_sums(self) -> np.ndarray:
        sums = np.zeros(self.n)
        np.add.at(sums, self.cols, np.abs(self.vals))
        return sums


def _check_dominance(system: SparseRowSystem) -> None:
    if np.any(system.diag <= 0.0):
        raise ValidationError("system diagonal must be strictly positive")
    if np.all(system.diag > system.offdiag_row_sums()):
        return
    if np.all(system.diag > system.offdiag_col_sums()):
        return
    raise ValidationError(
        "system is not strictly diagonally dominant (neither by rows nor by "
        "columns); Gauss-Seidel convergence is not guaranteed"
    )


def gauss_seidel(system: SparseRowSystem, rhs, options: SolverOptions = DEFAULT_OPTIONS,
                 free=None, x0=None):
    """Solve ``A x = rhs`` by forward Gauss-Seidel.

    ``free`` marks the unknowns (pinned entries keep their ``x0`` value and
    act as constants); defaults to all-free.  Returns ``(x, iterations)``.
    Raises NonConvergenceError (carrying the last residual) if the iteration
    cap is hit.
    """
    _check_dominance(system)
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape != (system.n,):
        raise ValidationError("rhs length does not match the system")
    x = np.zeros(system.n) if x0 is None else np.asarray(x0, dtype=np.float64).copy()
    free = (np.ones(system.n, dtype=bool) if free is None
            else np.asarray(free, dtype=bool))
    for iteration in range(1, options.max_iterations + 1):
        change = gs_sweep(system.indptr, system.cols, system.vals,
                          system.diag, rhs, x, free)
        if change < options.tolerance:
            return x, iteration
    raise NonConvergenceError(
        f"Gauss-Seidel did not reach tolerance {options.tolerance} within "
        f"{options.max_iterations} iterations (last change {change:.3e})",
        residual=float(change),
        iterations=options.max_iterations,
    )


def _require_compatible(tm: TransmissionMatrix, damping: DampingConfig):
    if damping.n != tm.n:
        raise ValidationError(
            f"damping has {damping.n} entries but the graph has {tm.n} nodes"
        )


def influence_row_system(tm: TransmissionMatrix, damping: DampingConfig) -> SparseRowSystem:
    """``I + diag(lam) - T.T``: row j's off-diagonals are the negated
    strengths of arcs into j."""
    _require_compatible(tm, damping)
    return SparseRowSystem(
        diag=1.0 + damping.values,
        indptr=tm.col_indptr,
        cols=tm.col_src,
        vals=-tm.col_vals,
    )


def potential_row_system(tm: TransmissionMatrix, damping: DampingConfig) -> SparseRowSystem:
    """``I + diag(lam) - T``: row i's off-diagonals are the negated strengths
    of arcs out of i."""
    _require_compatible(tm, damping)
    return SparseRowSystem(
        diag=1.0 + damping.values,
        indptr=tm.row_indptr,
        cols=tm.row_dst,
        vals=-tm.row_vals,
    )


@dataclass(frozen=True)
class BasisColumn:
    """Column ``node`` of the basis matrix (inverse influence system):
    entry j is the damped flow from a unit injection at ``node`` to j."""

    node: int
    values: np.ndarray
    iterations_used: int


@dataclass(frozen=True)
class PotentialVector:
    """Entry i is node i's potential toward ``target_set``: the sum of basis
    entries from i into each target."""

    target_set: frozenset
    values: np.ndarray


@dataclass(frozen=True)
class InfluenceVector:
    """Influence of ``seed_set`` on every node; seed entries are exactly 1."""

    seed_set: frozenset
    values: np.ndarray
    total: float = field(default=None)

    def __post_init__(self):
        if self.total is None:
            object.__setattr__(self, "total", float(np.sum(self.values)))


def _validate_nodes(nodes, n, what: str) -> list[int]:
    out = sorted({int(v) for v in nodes})
    if not out:
        raise ValidationError(f"{what} must not be empty")
    if out[0] < 0 or out[-1] >= n:
        bad = out[0] if out[0] < 0 else out[-1]
        raise ValidationError(f"{what} contains node {bad} outside 0..{n - 1}")
    return out


def basis_column(tm: TransmissionMatrix, damping: DampingConfig, node: int,
                 options: SolverOptions = DEFAULT_OPTIONS) -> BasisColumn:
    """Solve the influence system against the unit vector at ``node``."""
    node = int(node)
    if not (0 <= node < tm.n):
        raise ValidationError(f"node {node} outside 0..{tm.n - 1}")
    rhs = np.zeros(tm.n)
    rhs[node] = 1.0
    x, iters = gauss_seidel(influence_row_system(tm, damping), rhs, options)
    return BasisColumn(node=node, values=x, iterations_used=iters)


def potential_vector(tm: TransmissionMatrix, damping: DampingConfig, targets,
                     options: SolverOptions = DEFAULT_OPTIONS) -> PotentialVector:
    """Solve the potential system against the target-set indicator."""
    tgt = _validate_nodes(targets, tm.n, "target set")
    rhs = np.zeros(tm.n)
    rhs[tgt] = 1.0
    x, _ = gauss_seidel(potential_row_system(tm, damping), rhs, options)
    return PotentialVector(target_set=frozenset(tgt), values=x)


def reduced_influence(tm: TransmissionMatrix, damping: DampingConfig, seeds,
                      options: SolverOptions = DEFAULT_OPTIONS) -> InfluenceVector:
    """Seed-set influence via the complement system: seed entries are pinned
    to 1 and only non-seed rows are swept, so each sweep costs one pass over
    the arcs regardless of seed count."""
    S = _validate_nodes(seeds, tm.n, "seed set")
    x0 = np.zeros(tm.n)
    x0[S] = 1.0
    free = np.ones(tm.n, dtype=bool)
    free[S] = False
    x, _ = gauss_seidel(influence_row_system(tm, damping), np.zeros(tm.n),
                        options, free=free, x0=x0)
    return InfluenceVector(seed_set=frozenset(S), values=x)
