"""Graph loading, transmission matrices, and damping configuration.

Edge lists are plain text: one ``src dst [weight]`` triple per line, ``#``
starts a comment, blank lines are skipped.  Node ids are integers; the dense
internal index of a node is its rank among the sorted distinct ids, so the
mapping is reproducible regardless of edge order.  Edges are interpreted in
the *influence* direction (``u v`` means "u influences v"); data collected in
the trust direction ("u trusts/follows v") can be loaded with
``semantics="trust"`` which reverses every edge.  Duplicate edges sum their
weights, self-loops are rejected, weights must be positive.

From a graph we build a weighted-cascade transmission matrix: the entry for
arc ``i -> j`` is ``w_ij`` divided by the total in-weight of ``j``, so each
node's incoming transmission sums to one (or zero for sources).  That keeps
every column sum at most one, the standing assumption of the influence
solver.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import EdgeListError, ValidationError

DEFAULT_LAMBDA = 0.2
LAMBDA_MIN = 1e-9
COLUMN_SUM_SLACK = 1e-12


def _csr_from_arcs(n: int, key: np.ndarray, other: np.ndarray, w: np.ndarray):
    """Group arcs by `key` (stable ascending (key, other) order); returns
    (indptr, other_sorted, w_sorted)."""
    order = np.lexsort((other, key))
    key, other, w = key[order], other[order], w[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, key + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, other, w


@dataclass(frozen=True)
class InfluenceGraph:
    """Directed weighted graph over dense indices ``0..n-1``.

    ``node_ids[i]`` is the external id of dense node ``i``.  Both adjacency
    directions are stored CSR-style: ``out_*`` grouped by source, ``in_*``
    grouped by target.  They describe the same arc multiset.
    """

    node_ids: np.ndarray
    out_indptr: np.ndarray
    out_dst: np.ndarray
    out_w: np.ndarray
    in_indptr: np.ndarray
    in_src: np.ndarray
    in_w: np.ndarray
    directed: bool = True
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        self._index.update({int(ext): i for i, ext in enumerate(self.node_ids)})

    @property
    def n(self) -> int:
        return int(self.node_ids.shape[0])

    @property
    def arc_count(self) -> int:
        return int(self.out_dst.shape[0])

    def index_of(self, external_id: int) -> int:
        try:
            return self._index[int(external_id)]
        except KeyError:
            raise ValidationError(f"unknown node id {external_id!r}") from None

    def out_edges(self, i: int):
        s, e = self.out_indptr[i], self.out_indptr[i + 1]
        return self.out_dst[s:e], self.out_w[s:e]

    def in_edges(self, i: int):
        s, e = self.in_indptr[i], self.in_indptr[i + 1]
        return self.in_src[s:e], self.in_w[s:e]

    def out_degree(self, i: int) -> int:
        return int(self.out_indptr[i + 1] - self.out_indptr[i])

    @classmethod
    def from_arcs(cls, arcs, nodes=(), directed: bool = True) -> "InfluenceGraph":
        """Build a graph from ``(src, dst, weight)`` triples with external ids.

        ``nodes`` adds isolated nodes.  Undirected graphs store each edge as
        two arcs.  Duplicate arcs (after any undirected expansion) sum their
        weights.
        """
        merged: dict[tuple[int, int], float] = {}
        ids = set(int(x) for x in nodes)
        for src, dst, w in arcs:
            src, dst, w = int(src), int(dst), float(w)
            if src == dst:
                raise ValidationError(f"self-loop on node {src} is not allowed")
            if not (w > 0.0) or not np.isfinite(w):
                raise ValidationError(
                    f"edge {src} -> {dst} has non-positive weight {w!r}"
                )
            ids.add(src)
            ids.add(dst)
            merged[(src, dst)] = merged.get((src, dst), 0.0) + w
            if not directed:
                merged[(dst, src)] = merged.get((dst, src), 0.0) + w
        node_ids = np.array(sorted(ids), dtype=np.int64)
        lookup = {ext: i for i, ext in enumerate(node_ids.tolist())}
        m = len(merged)
        src_a = np.empty(m, dtype=np.int64)
        dst_a = np.empty(m, dtype=np.int64)
        w_a = np.empty(m, dtype=np.float64)
        for k, (edge, w) in enumerate(merged.items()):
            src_a[k] = lookup[edge[0]]
            dst_a[k] = lookup[edge[1]]
            w_a[k] = w
        n = node_ids.shape[0]
        out_indptr, out_dst, out_w = _csr_from_arcs(n, src_a, dst_a, w_a)
        in_indptr, in_src, in_w = _csr_from_arcs(n, dst_a, src_a, w_a)
        return cls(node_ids, out_indptr, out_dst, out_w, in_indptr, in_src, in_w,
                   directed=directed)

    def to_edge_list_text(self) -> str:
        """Serialize as ``src dst weight`` lines, sorted by (src, dst), full
        float precision.  Undirected graphs emit each edge once (src < dst)."""
        lines = []
        for i in range(self.n):
            dsts, ws = self.out_edges(i)
            src_ext = int(self.node_ids[i])
            for dst, w in zip(dsts.tolist(), ws.tolist()):
                dst_ext = int(self.node_ids[dst])
                if not self.directed and src_ext > dst_ext:
                    continue
                lines.append(f"{src_ext} {dst_ext} {w!r}")
        return "\n".join(lines) + ("\n" if lines else "")


def parse_edge_lines(lines, semantics: str = "influence"):
    """Yield (src, dst, weight) from raw text lines; raises EdgeListError with
    the 1-based line number on malformed input."""
    if semantics not in ("influence", "trust"):
        raise ValidationError(f"unknown edge semantics {semantics!r}")
    flip = semantics == "trust"
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(
                f"line {lineno}: expected 'src dst [weight]', got {line!r}"
            )
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(
                f"line {lineno}: node ids must be integers, got {line!r}"
            ) from None
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListError(
                    f"line {lineno}: weight must be a number, got {parts[2]!r}"
                ) from None
            if not np.isfinite(w) or w <= 0.0:
                raise EdgeListError(
                    f"line {lineno}: weight must be positive and finite, got {parts[2]!r}"
                )
        else:
            w = 1.0
        if src == dst:
            raise EdgeListError(f"line {lineno}: self-loop on node {src}")
        yield (dst, src, w) if flip else (src, dst, w)


def load_edge_list(source, directed: bool = True,
                   semantics: str = "influence") -> InfluenceGraph:
    """Load a graph from a path, file object, or edge-list string."""
    if isinstance(source, (str, os.PathLike)) and (
        isinstance(source, os.PathLike) or "\n" not in source
    ):
        with open(source, "r", encoding="utf-8") as fh:
            arcs = list(parse_edge_lines(fh, semantics))
    elif isinstance(source, str):
        arcs = list(parse_edge_lines(io.StringIO(source), semantics))
    else:
        arcs = list(parse_edge_lines(source, semantics))
    if not arcs:
        raise ValidationError("edge list contains no edges")
    return InfluenceGraph.from_arcs(arcs, directed=directed)


@dataclass(frozen=True)
class TransmissionMatrix:
    """Sparse nonnegative matrix of arc transmission strengths, stored both
    column-wise (grouped by target: incoming arcs) and row-wise (grouped by
    source: outgoing arcs).  Every column sums to at most one.
    """

    n: int
    col_indptr: np.ndarray
    col_src: np.ndarray
    col_vals: np.ndarray
    row_indptr: np.ndarray
    row_dst: np.ndarray
    row_vals: np.ndarray
    column_sums: np.ndarray

    @property
    def arc_count(self) -> int:
        return int(self.col_vals.shape[0])

    def in_arcs(self, j: int):
        """Sources and strengths of arcs into node j."""
        s, e = self.col_indptr[j], self.col_indptr[j + 1]
        return self.col_src[s:e], self.col_vals[s:e]

    def out_arcs(self, i: int):
        """Targets and strengths of arcs out of node i."""
        s, e = self.row_indptr[i], self.row_indptr[i + 1]
        return self.row_dst[s:e], self.row_vals[s:e]

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n, self.n))
        for i in range(self.n):
            dsts, vals = self.out_arcs(i)
            dense[i, dsts] = vals
        return dense

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "TransmissionMatrix":
        """Build from ``(src, dst, strength)`` triples over dense indices,
        validating positivity, no self-loops, and column sums <= 1."""
        arcs = list(arcs)
        m = len(arcs)
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        val = np.empty(m, dtype=np.float64)
        seen = set()
        for k, (i, j, t) in enumerate(arcs):
            i, j, t = int(i), int(j), float(t)
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"arc ({i}, {j}) outside node range 0..{n - 1}")
            if i == j:
                raise ValidationError(f"self-loop transmission on node {i}")
            if (i, j) in seen:
                raise ValidationError(f"duplicate arc ({i}, {j})")
            if not (0.0 < t <= 1.0 + COLUMN_SUM_SLACK):
                raise ValidationError(
                    f"transmission on arc ({i}, {j}) must lie in (0, 1], got {t!r}"
                )
            seen.add((i, j))
            src[k], dst[k], val[k] = i, j, t
        col_indptr, col_src, col_vals = _csr_from_arcs(n, dst, src, val)
        row_indptr, row_dst, row_vals = _csr_from_arcs(n, src, dst, val)
        sums = np.zeros(n)
        np.add.at(sums, dst, val)
        bad = np.nonzero(sums > 1.0 + COLUMN_SUM_SLACK)[0]
        if bad.size:
            raise ValidationError(
                f"incoming transmission of node {int(bad[0])} sums to "
                f"{sums[bad[0]]!r} > 1"
            )
        return cls(n, col_indptr, col_src, col_vals,
                   row_indptr, row_dst, row_vals, sums)


def build_wc_transmission(graph: InfluenceGraph) -> TransmissionMatrix:
    """Weighted-cascade transmission: arc ``i -> j`` gets weight
    ``w_ij / (total in-weight of j)``.  Nonempty columns sum to exactly one;
    nodes with no in-arcs get an empty column."""
    n = graph.n
    in_weight = np.zeros(n)
    np.add.at(in_weight, graph.out_dst, graph.out_w)
    col_vals = graph.in_w / in_weight[np.repeat(
        np.arange(n), np.diff(graph.in_indptr))] if graph.arc_count else graph.in_w.copy()
    row_vals = graph.out_w / in_weight[graph.out_dst] if graph.arc_count else graph.out_w.copy()
    sums = np.zeros(n)
    np.add.at(sums, graph.out_dst, row_vals)
    return TransmissionMatrix(
        n=n,
        col_indptr=graph.in_indptr.copy(),
        col_src=graph.in_src.copy(),
        col_vals=col_vals,
        row_indptr=graph.out_indptr.copy(),
        row_dst=graph.out_dst.copy(),
        row_vals=row_vals,
        column_sums=sums,
    )


def scale_transmission(tm: TransmissionMatrix, factor: float) -> TransmissionMatrix:
    """Uniformly rescale all strengths by ``factor`` in ``(0, 1]``."""
    if not (0.0 < factor <= 1.0):
        raise ValidationError(f"scale factor must be in (0, 1], got {factor!r}")
    return TransmissionMatrix(
        n=tm.n,
        col_indptr=tm.col_indptr,
        col_src=tm.col_src,
        col_vals=tm.col_vals * factor,
        row_indptr=tm.row_indptr,
        row_dst=tm.row_dst,
        row_vals=tm.row_vals * factor,
        column_sums=tm.column_sums * factor,
    )


@dataclass(frozen=True)
class DampingConfig:
    """Per-node damping coefficients; every value must be >= 1e-9."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1:
            raise ValidationError("damping values must be a flat vector")
        if not np.all(np.isfinite(vals)) or np.any(vals < LAMBDA_MIN):
            raise ValidationError(
                f"damping coefficients must be finite and >= {LAMBDA_MIN}"
            )

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @classmethod
    def uniform(cls, n: int, value: float = DEFAULT_LAMBDA) -> "DampingConfig":
        return cls(np.full(n, float(value)))

    @classmethod
    def from_mapping(cls, mapping, graph: InfluenceGraph) -> "DampingConfig":
        """Per-node damping keyed by external node id; every node needs a value."""
        vals = np.full(graph.n, np.nan)
        for ext, lam in mapping.items():
            vals[graph.index_of(ext)] = float(lam)
        missing = np.nonzero(np.isnan(vals))[0]
        if missing.size:
            raise ValidationError(
                f"damping file misses {missing.size} node(s), first missing id "
                f"{int(graph.node_ids[missing[0]])}"
            )
        return cls(vals)


def load_damping_file(path, graph: InfluenceGraph) -> DampingConfig:
    """Read ``node lambda`` lines into a per-node DampingConfig."""
    mapping: dict[int, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListError(
                    f"line {lineno}: expected 'node lambda', got {line!r}"
                )
            try:
                node, lam = int(parts[0]), float(parts[1])
            except ValueError:
                raise EdgeListError(f"line {lineno}: malformed entry {line!r}") from None
            if node in mapping:
                raise EdgeListError(f"line {lineno}: duplicate node {node}")
            mapping[node] = lam
    return DampingConfig.from_mapping(mapping, graph)
