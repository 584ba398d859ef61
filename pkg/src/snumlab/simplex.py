"""Small dense two-phase simplex for standard-form LPs.

    minimize c @ x  subject to  A @ x = b,  x >= 0

Bland's rule picks entering and leaving variables, which rules out cycling.
Meant for the handful-of-rows problems the norm computations produce; it is
not a general-purpose solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: np.ndarray | None
    duals: np.ndarray | None  # y with A.T @ y <= c and b @ y = c @ x at optimum
    fun: float | None
    iterations: int


def _run(T, basis, cost, ncols, tol, max_iter, it0):
    it = it0
    while True:
        cb = cost[basis]
        reduced = cost[:ncols] - cb @ T[:, :ncols]
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            return "optimal", it
        j = int(candidates[0])
        col = T[:, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            return "unbounded", it
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol * max(1.0, abs(best))]
        r = int(min(ties, key=lambda i: basis[i]))
        _pivot(T, r, j)
        basis[r] = j
        it += 1
        if it > max_iter:
            raise NumericalFailure(f"simplex exceeded {max_iter} pivots")
    # unreachable


def _pivot(T, r, j):
    T[r] /= T[r, j]
    factor = T[:, j].copy()
    factor[r] = 0.0
    T -= np.outer(factor, T[r])


def solve_lp(c, A, b, tol: float = 1e-11, max_iter: int | None = None) -> LPResult:
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float, ndmin=2)
    b = np.array(b, dtype=float)
    m, n = A.shape
    if max_iter is None:
        max_iter = 50 * (m + n) + 100

    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Phase I: artificial identity block.
    T = np.hstack([A, np.eye(m), b[:, None]])
    basis = list(range(n, n + m))
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    status, it = _run(T, basis, cost1, n + m, tol, max_iter, 0)
    infeas = float(T[:, -1] @ cost1[basis])
    if infeas > 1e-9 * max(1.0, float(np.abs(b).max(initial=0.0))):
        return LPResult("infeasible", None, None, None, it)

    # Pivot artificials out of the basis; rows where that fails are redundant.
    keep = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] >= n:
            nz = np.flatnonzero(np.abs(T[r, :n]) > 1e3 * tol)
            if nz.size:
                _pivot(T, r, int(nz[0]))
                basis[r] = int(nz[0])
            else:
                keep[r] = False
    rows_kept = np.flatnonzero(keep)
    T = np.hstack([T[rows_kept, :n], T[rows_kept, -1:]])
    basis = [basis[r] for r in rows_kept]

    status, it = _run(T, basis, c, n, tol, max_iter, it)
    if status != "optimal":
        return LPResult(status, None, None, None, it)

    x = np.zeros(n)
    x[basis] = T[:, -1]
    x[x < 0] = 0.0
    B = A[np.ix_(rows_kept, basis)]
    y_kept = np.linalg.solve(B.T, c[basis])
    y = np.zeros(m)
    y[rows_kept] = y_kept
    y[flip] *= -1.0
    return LPResult("optimal", x, y, float(c @ x), it)
