"""Seeded synthetic graph generation for experiments and stress tests."""

from __future__ import annotations

import networkx as nx

from .errors import ValidationError


def erdos_renyi_edges(n: int, p: float, rng_seed: int,
                      directed: bool = True) -> list:
    """G(n, p) edge list (0-based ids).  Isolated nodes do not appear in the
    output, as usual for edge-list serialization."""
    if n < 2:
        raise ValidationError("need at least 2 nodes")
    if not (0.0 <= p <= 1.0):
        raise ValidationError(f"edge probability must be in [0, 1], got {p!r}")
    g = nx.fast_gnp_random_graph(n, p, seed=int(rng_seed), directed=directed)
    return sorted(g.edges())


def preferential_attachment_edges(n: int, attach: int, rng_seed: int) -> list:
    """Preferential-attachment (scale-free) edge list; each new node links to
    ``attach`` existing nodes.  Undirected by construction."""
    if n < 2:
        raise ValidationError("need at least 2 nodes")
    if not (1 <= attach < n):
        raise ValidationError(
            f"attachment count must satisfy 1 <= attach < n, got {attach}"
        )
    g = nx.barabasi_albert_graph(n, attach, seed=int(rng_seed))
    return sorted(g.edges())


def write_edge_list(path, edges, comment: str | None = None) -> int:
    """Write ``u v`` lines; returns the number of edges written."""
    edges = list(edges)
    if not edges:
        raise ValidationError("refusing to write an empty edge list")
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")
    return len(edges)
