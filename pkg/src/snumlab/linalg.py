"""Dense linear-algebra kernels used by the norm and s-number computations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import InputError, NumericalFailure
from .simplex import solve_lp
from .spaces import INF, SequenceSpace, dual_exponent, lp_norm, norming_functional

EPS = np.finfo(float).eps


def _as_matrix(M) -> np.ndarray:
    a = np.asarray(M)
    if a.ndim != 2:
        raise InputError(f"expected a matrix, got array of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def svd(M):
    """Thin SVD ``(U, s, Vt)`` with ``s`` non-increasing.

    Backed by LAPACK through numpy; wrapped so callers see toolkit errors.
    """
    a = _as_matrix(M).astype(float)
    if a.size == 0:
        k = min(a.shape)
        return np.zeros((a.shape[0], k)), np.zeros(k), np.zeros((k, a.shape[1]))
    try:
        return np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc


def singular_values(M) -> np.ndarray:
    a = _as_matrix(M).astype(float)
    if a.size == 0:
        return np.zeros(min(a.shape))
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc


def rank_tolerance(s: np.ndarray, shape) -> float:
    top = float(s[0]) if s.size else 0.0
    return max(shape) * EPS * top


def numerical_rank(M) -> int:
    a = _as_matrix(M)
    s = singular_values(a)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rank_tolerance(s, a.shape)))


def orthonormal_basis(N, dim: int | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the column span of ``N``."""
    if N is None:
        return np.zeros((dim or 0, 0))
    a = np.asarray(N, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], 0))
    U, s, _ = svd(a)
    if s.size == 0 or s[0] == 0:
        return np.zeros((a.shape[0], 0))
    r = int(np.count_nonzero(s > rank_tolerance(s, a.shape)))
    return U[:, :r]


def null_space_basis(F, dim: int | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of {x : F x = 0}.

    ``F`` holds one functional per row; an empty ``F`` needs ``dim``.
    """
    if F is None or np.size(F) == 0:
        if dim is None:
            dim = np.shape(F)[1] if F is not None and np.ndim(F) == 2 else None
        if dim is None:
            raise InputError("ambient dimension required for an empty functional set")
        return np.eye(dim)
    a = np.array(F, dtype=float, ndmin=2)
    if dim is not None and a.shape[1] != dim:
        raise InputError(f"functionals of length {a.shape[1]} on a {dim}-dimensional space")
    n = a.shape[1]
    try:
        _, s, Vt = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    r = 0 if s[0] == 0 else int(np.count_nonzero(s > rank_tolerance(s, a.shape)))
    return Vt[r:].T.copy() if r < n else np.zeros((n, 0))


# -- eigenvalues ------------------------------------------------------------


def hessenberg(M) -> np.ndarray:
    """Upper Hessenberg matrix similar to ``M`` (Householder reflections)."""
    H = np.array(_as_matrix(M), dtype=complex if np.iscomplexobj(M) else float)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H


def _wilkinson_shift(a, b, c, d):
    tr = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b * c)
    mu1, mu2 = tr + disc, tr - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def eigenvalues(M, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues sorted by non-increasing modulus.

    Hessenberg reduction followed by complex single-shift QR with Wilkinson
    shifts; every tenth sweep on a block uses an exceptional shift so that
    cyclic-shift-like matrices do not stall.
    """
    a = _as_matrix(M)
    n, m = a.shape
    if n != m:
        raise InputError(f"eigenvalues need a square matrix, got {a.shape}")
    if n == 0:
        return np.zeros(0, dtype=complex)
    H = hessenberg(a).astype(complex)
    scale = max(float(np.abs(H).max()), 1e-300)
    eig = np.zeros(n, dtype=complex)
    hi = n - 1
    sweeps = 0
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            off = abs(H[lo, lo - 1])
            diag = abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])
            if off <= EPS * (diag if diag > 0 else scale):
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            sweeps = 0
            continue
        sweeps += 1
        if sweeps > max_sweeps:
            raise NumericalFailure(f"QR iteration stalled at index {hi} after {max_sweeps} sweeps")
        if sweeps % 10 == 0:
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * (1.0 + 0.5j)
        else:
            mu = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        W = H[lo : hi + 1, lo : hi + 1]
        size = W.shape[0]
        W -= mu * np.eye(size)
        rots = []
        for k in range(size - 1):
            x, y = W[k, k], W[k + 1, k]
            r = math.hypot(abs(x), abs(y))
            if r == 0.0:
                c, s = 1.0 + 0j, 0j
            else:
                c, s = x / r, y / r
            G = np.array([[np.conj(c), np.conj(s)], [-s, c]])
            W[k : k + 2, k:] = G @ W[k : k + 2, k:]
            rots.append(G)
        for k, G in enumerate(rots):
            top = min(k + 2, size - 1)
            W[: top + 1, k : k + 2] = W[: top + 1, k : k + 2] @ G.conj().T
        W += mu * np.eye(size)
        H[lo : hi + 1, lo : hi + 1] = W
    if not np.iscomplexobj(a):
        small = np.abs(eig.imag) <= 8 * EPS * scale
        eig[small] = eig[small].real
    order = sorted(range(n), key=lambda i: (-abs(eig[i]), -eig[i].real, -eig[i].imag))
    return eig[order]


def determinant(M):
    """Determinant; for triangular input exactly the product of the diagonal."""
    a = _as_matrix(M)
    if a.shape[0] != a.shape[1]:
        raise InputError(f"determinant needs a square matrix, got {a.shape}")
    if a.shape[0] == 0:
        return 1.0
    if np.array_equal(a, np.triu(a)) or np.array_equal(a, np.tril(a)):
        d = np.prod(np.diag(a))
    else:
        d = np.linalg.det(a)
    return complex(d) if np.iscomplexobj(a) else float(d)


# -- distance to a subspace ------------------------------------------------


@dataclass
class Distance:
    """Result of ``distance_to_subspace``.

    ``upper`` is attained by ``nearest``; ``lower`` is the value of the dual
    ``functional``, which vanishes on the subspace and has dual norm <= 1.
    """

    upper: float
    lower: float
    functional: np.ndarray
    nearest: np.ndarray
    method: str

    @property
    def value(self) -> float:
        return self.upper

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def _clean_functional(b, Q, p_dual):
    """Remove the component along span(Q) and rescale into the dual ball."""
    if Q.shape[1]:
        b = b - Q @ (Q.T @ b)
    nb = float(lp_norm(b, p_dual))
    if nb > 1.0:
        b = b / nb
    return b


def distance_to_subspace(y, N, space: SequenceSpace, gap_tol: float = 1e-9) -> Distance:
    """inf over z in span(N) of ||y - z||, with a dual certificate.

    l_2 uses an orthogonal projection; l_1 and l_inf solve the dual LP
    max <y, b> s.t. b vanishes on N, ||b||_* <= 1 and read the primal
    coefficients off its multipliers. Other exponents use a smooth convex
    solve and are only as good as the reported gap.
    """
    y = np.asarray(y, dtype=float)
    m = space.dim
    if y.shape != (m,):
        raise InputError(f"vector of shape {y.shape} does not belong to {space}")
    if N is not None and np.size(N):
        Nm = np.asarray(N, dtype=float)
        if Nm.ndim == 1:
            Nm = Nm[:, None]
        if Nm.shape[0] != m:
            raise InputError(f"basis columns of length {Nm.shape[0]} in {space}")
    Q = orthonormal_basis(N, m) if N is not None else np.zeros((m, 0))
    p = space.exponent
    pd = dual_exponent(p)
    ynorm = float(lp_norm(y, p))
    if ynorm == 0.0:
        return Distance(0.0, 0.0, np.zeros(m), np.zeros(m), "zero")
    if Q.shape[1] == 0:
        b = norming_functional(space, y)
        return Distance(ynorm, float(y @ b), b, np.zeros(m), "norm")
    if Q.shape[1] >= m:
        return Distance(0.0, 0.0, np.zeros(m), y.copy(), "full")

    if p == 2:
        r = y - Q @ (Q.T @ y)
        r = r - Q @ (Q.T @ r)
        d = float(np.linalg.norm(r))
        b = r / d if d > 0 else np.zeros(m)
        lower = float(y @ b) if d > 0 else 0.0
        return Distance(d, min(lower, d), b, y - r, "projection")

    scale = float(np.abs(y).max())
    ys = y / scale
    k = Q.shape[1]
    if p == INF:
        # variables u, w >= 0 with b = u - w, plus slack for ||b||_1 <= 1
        A = np.zeros((k + 1, 2 * m + 1))
        A[:k, :m] = Q.T
        A[:k, m : 2 * m] = -Q.T
        A[k, :] = 1.0
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        c = np.concatenate([-ys, ys, [0.0]])
        res = solve_lp(c, A, rhs)
        if res.status != "optimal":
            raise NumericalFailure(f"distance LP ended {res.status}")
        b = res.x[:m] - res.x[m : 2 * m]
        t = res.duals[:k]
        method = "lp-inf"
    elif p == 1:
        # b = u - 1 with 0 <= u <= 2
        A = np.zeros((k + m, 2 * m))
        A[:k, :m] = Q.T
        A[k:, :m] = np.eye(m)
        A[k:, m:] = np.eye(m)
        rhs = np.concatenate([Q.T @ np.ones(m), 2.0 * np.ones(m)])
        c = np.concatenate([-ys, np.zeros(m)])
        res = solve_lp(c, A, rhs)
        if res.status != "optimal":
            raise NumericalFailure(f"distance LP ended {res.status}")
        b = res.x[:m] - 1.0
        t = res.duals[:k]
        method = "lp-1"
    else:
        t0 = -(Q.T @ ys)

        def f(t):
            r = ys + Q @ t
            v = float(lp_norm(r, p))
            if v == 0.0:
                return 0.0, np.zeros_like(t)
            g = norming_functional(SequenceSpace(m, p), r)
            return v, Q.T @ g

        out = minimize(f, t0, jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": 500})
        t = out.x
        r = ys + Q @ t
        b = norming_functional(SequenceSpace(m, p), r) if np.any(r) else np.zeros(m)
        method = "convex"

    b = _clean_functional(b, Q, pd)
    r = ys + Q @ t
    upper = float(lp_norm(r, p)) * scale
    lower = float(y @ b)
    if method != "convex" and upper - lower > gap_tol * (1.0 + ynorm):
        raise NumericalFailure(
            f"distance certificate gap {upper - lower:.3e} exceeds tolerance"
        )
    lower = min(max(lower, 0.0), upper)
    return Distance(upper, lower, b, y - r * scale, method)
