"""Compiled inner loops. Kept tiny and allocation-free; everything here is
deterministic (fixed sweep order, no fastmath)."""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def gs_sweep(indptr, cols, vals, diag, rhs, x, free):
    """One in-place forward Gauss-Seidel sweep over rows marked free.

    ``vals`` holds the actual (signed) off-diagonal entries of row ``j`` at
    ``cols``; pinned rows (``free[j] == False``) keep their current value and
    still feed neighbours.  Returns the largest absolute update.
    """
    worst = 0.0
    for j in range(diag.shape[0]):
        if not free[j]:
            continue
        acc = rhs[j]
        for k in range(indptr[j], indptr[j + 1]):
            acc -= vals[k] * x[cols[k]]
        nxt = acc / diag[j]
        delta = nxt - x[j]
        if delta < 0.0:
            delta = -delta
        if delta > worst:
            worst = delta
        x[j] = nxt
    return worst
