"""Independent dense reference implementations used to validate the package.

Everything here works on a *dense* transmission matrix ``T`` (``T[i, j]`` =
strength of arc ``i -> j``) and a per-node damping vector ``lam``, using
LAPACK-backed dense linear algebra only — no sparse structures, no iterative
solves — so agreement with the package is a genuine cross-check.

Derivations (all elementary linear algebra):

* The influence a seed set S exerts on a non-seed j satisfies
  ``(1 + lam_j) f_j = sum_k T[k, j] f_k`` with ``f_i = 1`` on seeds.  Writing
  ``A = I + diag(lam) - T.T`` (row j of ``T.T`` holds the arcs *into* j), the
  basis matrix is ``P = inv(A)`` and the seed-set solution is
  ``f = P[:, S] @ nu`` where ``nu`` solves ``P[S][:, S] nu = 1`` — that choice
  of right-hand side is exactly what forces ``f = 1`` on the seeds.
* The potential of i toward a target set TT is ``sum_{j in TT} P[j, i]``,
  i.e. a column sum of P restricted to target rows, equivalently the solution
  of ``A.T p = indicator(TT)``.
* The one-step-removal upper bound replaces each seed's correction ``nu_j``
  by its largest possible value ``(1 + lam_j) - sum_{k in S} T[k, j]``.
* Exact cascade probabilities come from enumerating all live-arc subsets:
  each arc is independently live with its transmission strength, and a node
  activates iff reachable from S through live arcs.
* The stochastic fixed point iterates
  ``f_j <- 1 - prod_k (1 - T[k, j] f_k)`` with seeds pinned to 1.
"""

from __future__ import annotations

import itertools

import numpy as np


def influence_system(T: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Dense ``I + diag(lam) - T.T``."""
    n = T.shape[0]
    return np.eye(n) + np.diag(lam) - T.T


def basis_matrix(T: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Dense inverse of the influence system (LU-backed)."""
    return np.linalg.inv(influence_system(T, lam))


def potential(T: np.ndarray, lam: np.ndarray, targets) -> np.ndarray:
    """p[i] = sum over target rows j of P[j, i]."""
    P = basis_matrix(T, lam)
    rows = sorted(int(t) for t in targets)
    return P[rows, :].sum(axis=0)

def seed_correction(T: np.ndarray, lam: np.ndarray, seeds) -> np.ndarray:
    """nu solving P[S][:, S] nu = 1 (dense partial-pivot solve)."""
    P = basis_matrix(T, lam)
    S = sorted(int(s) for s in seeds)
    return np.linalg.solve(P[np.ix_(S, S)], np.ones(len(S)))


def influence_vector(T: np.ndarray, lam: np.ndarray, seeds) -> np.ndarray:
    """Closed-form seed-set influence with seed entries pinned to 1."""
    P = basis_matrix(T, lam)
    S = sorted(int(s) for s in seeds)
    nu = np.linalg.solve(P[np.ix_(S, S)], np.ones(len(S)))
    f = P[:, S] @ nu
    f[S] = 1.0
    return f


def influence_vector_reduced(T: np.ndarray, lam: np.ndarray, seeds) -> np.ndarray:
    """Same quantity via the complement system: for non-seeds,
    ``(I + diag(lam) - T.T)[rest][:, rest] f_rest = (T.T)[rest][:, S] @ 1``."""
    n = T.shape[0]
    S = sorted(int(s) for s in seeds)
    rest = [i for i in range(n) if i not in set(S)]
    A = influence_system(T, lam)
    rhs = T.T[np.ix_(rest, S)] @ np.ones(len(S))
    f = np.ones(n)
    if rest:
        f[rest] = np.linalg.solve(A[np.ix_(rest, rest)], rhs)
    return f


def yang_influence(T: np.ndarray, seeds) -> np.ndarray:
    """Undamped fixed point ``f_rest = inv(I - T.T[rest, rest]) @ t_rest``
    (the classic linear cascade approximation; needs column sums < 1)."""
    n = T.shape[0]
    S = sorted(int(s) for s in seeds)
    rest = [i for i in range(n) if i not in set(S)]
    f = np.ones(n)
    if rest:
        A = np.eye(len(rest)) - T.T[np.ix_(rest, rest)]
        rhs = T.T[np.ix_(rest, S)] @ np.ones(len(S))
        f[rest] = np.linalg.solve(A, rhs)
    return f


def upper_bound(T: np.ndarray, lam: np.ndarray, seeds, targets) -> float:
    p = potential(T, lam, targets)
    S = sorted(int(s) for s in seeds)
    total = 0.0
    for j in S:
        total += ((1.0 + lam[j]) - T[S, j].sum()) * p[j]
    return total


def ic_exact(T: np.ndarray, seeds) -> np.ndarray:
    """Exact independent-cascade activation probabilities by live-arc
    enumeration (exponential in the arc count; keep graphs tiny)."""
    n = T.shape[0]
    arcs = [(i, j, T[i, j]) for i in range(n) for j in range(n) if T[i, j] > 0.0]
    S = sorted(int(s) for s in seeds)
    prob = np.zeros(n)
    for live in itertools.product([False, True], repeat=len(arcs)):
        weight = 1.0
        adj = [[] for _ in range(n)]
        for (i, j, t), keep in zip(arcs, live):
            weight *= t if keep else 1.0 - t
            if keep:
                adj[i].append(j)
        if weight == 0.0:
            continue
        reached = np.zeros(n, dtype=bool)
        stack = list(S)
        reached[S] = True
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not reached[v]:
                    reached[v] = True
                    stack.append(v)
        prob[reached] += weight
    prob[S] = 1.0
    return prob


def st_fixed_point(T: np.ndarray, seeds, tol: float = 1e-12,
                   max_iter: int = 100_000) -> np.ndarray:
    n = T.shape[0]
    S = sorted(int(s) for s in seeds)
    f = np.zeros(n)
    f[S] = 1.0
    for _ in range(max_iter):
        nxt = 1.0 - np.prod(1.0 - T * f[:, None], axis=0)
        nxt[S] = 1.0
        if np.max(np.abs(nxt - f)) < tol:
            return nxt
        f = nxt
    raise RuntimeError("oracle fixed point did not converge")


def pagerank(T: np.ndarray, lam_uniform: float, topic) -> np.ndarray:
    """Topic-weighted ranking vector: solves (I - d T) x = (1-d)/|topic| * e_topic
    with d = 1/(1+lam)."""
    n = T.shape[0]
    d = 1.0 / (1.0 + lam_uniform)
    rhs = np.zeros(n)
    topic = sorted(int(t) for t in topic)
    rhs[topic] = (1.0 - d) / len(topic)
    return np.linalg.solve(np.eye(n) - d * T, rhs)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))
