"""Operator, restricted and quotient norms between l_p^m spaces.

Every result is a :class:`CertifiedValue`. Exact paths:

=====================  =====================================================
operator_norm          domain l_1 (columns), codomain l_inf (rows), (2, 2),
                       domain l_inf or codomain l_1 by sign enumeration
restricted_norm        (2, 2); codomain l_inf with domain p in {1, 2, inf}
                       (row-wise distance duality); domain l_1 / l_inf by
                       vertex enumeration of M intersected with the ball
quotient_norm          domain l_1 (columns); domain l_inf by sign
                       enumeration; (2, 2); codomain l_inf / l_1 via the
                       adjoint restricted to the annihilator of N
=====================  =====================================================

Everything else gets a lower bound from multi-start alternating ascent
(each candidate is a feasible point, so its value is a valid lower bound)
and an upper bound from norm-equivalence bridges through l_2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, DegenerateInputError, InputError
from .linalg import (
    distance_to_subspace,
    null_space_basis,
    numerical_rank,
    orthonormal_basis,
    singular_values,
    svd,
)
from .spaces import (
    DEFAULT_ENUM_CAP,
    INF,
    OperatorInstance,
    SequenceSpace,
    dual_exponent,
    embedding_constant,
    lp_norm,
    norming_functional,
    sign_vectors,
)

EXACT_TOL = 1e-9

EXACT = "exact"
CERTIFIED = "certified-interval"
LOWER_ONLY = "lower-only"
HEURISTIC = "heuristic"
STATUSES = (EXACT, CERTIFIED, LOWER_ONLY, HEURISTIC)


def classify(lower: float, upper: float | None, tol: float = EXACT_TOL) -> str:
    if upper is None:
        return LOWER_ONLY
    if upper - lower <= tol * (1.0 + abs(upper)):
        return EXACT
    return CERTIFIED


@dataclass
class CertifiedValue:
    """Two-sided bound on one number.

    ``lower`` and ``upper`` are certified; ``estimate`` is an optional
    heuristic value that never takes part in verification. ``point`` carries
    a maximizer when the computation produced one.
    """

    lower: float
    upper: float | None
    status: str
    methods: list = field(default_factory=list)
    estimate: float | None = None
    point: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise InputError(f"unknown status {self.status!r}")
        if self.upper is not None and self.lower > self.upper + 1e-12 * (1 + abs(self.upper)):
            raise InputError(f"lower {self.lower!r} exceeds upper {self.upper!r}")

    @classmethod
    def bounds(cls, lower, upper, methods, point=None, estimate=None):
        lower = max(float(lower), 0.0)
        if upper is not None:
            upper = float(upper)
            if lower > upper:
                lower = upper
        return cls(lower, upper, classify(lower, upper), list(methods), estimate, point)

    @classmethod
    def exact(cls, value, method, point=None):
        v = max(float(value), 0.0)
        return cls(v, v, EXACT, [method], None, point)

    @property
    def width(self) -> float:
        return math.inf if self.upper is None else self.upper - self.lower

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "status": self.status,
            "methods": list(self.methods),
            "estimate": self.estimate,
        }


@dataclass
class SearchOptions:
    """Knobs for the search-based paths."""

    restarts: int = 64
    inner_restarts: int = 8
    enum_cap: int = DEFAULT_ENUM_CAP
    lp_enum_cap: int = 10
    vertex_cap: int = 6
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if self.restarts < 1 or self.inner_restarts < 1:
            raise InputError("restarts must be >= 1")


DEFAULT_OPTIONS = SearchOptions()


def _rng(rng):
    return rng if rng is not None else np.random.default_rng(0)


def _normalize(x, p):
    n = float(lp_norm(x, p))
    return x / n if n > 0 else x


def _starts(dim, canonical, count, p, rng):
    """Canonical starts first, then seeded Gaussian directions up to ``count``."""
    out = []
    for v in canonical:
        v = np.asarray(v, dtype=float)
        if np.any(v):
            out.append(_normalize(v, p))
        if len(out) >= count:
            return out
    while len(out) < count:
        out.append(_normalize(rng.standard_normal(dim), p))
    return out


def _ascend(starts, step, value, rel_tol, max_iter):
    """Monotone alternating ascent from each start; returns (best value, point)."""
    best_val, best_x = -1.0, None
    for x in starts:
        val = value(x)
        for _ in range(max_iter):
            x_new = step(x)
            if x_new is None:
                break
            val_new = value(x_new)
            if val_new <= val * (1.0 + rel_tol):
                if val_new > val:
                    x, val = x_new, val_new
                break
            x, val = x_new, val_new
        if val > best_val:
            best_val, best_x = val, x
    return max(best_val, 0.0), best_x


# -- operator norm ----------------------------------------------------------


def _bridge_upper(A, p, q):
    mY, mX = A.shape
    s1 = float(singular_values(A)[0]) if A.size else 0.0
    return embedding_constant(p, 2.0, mX) * s1 * embedding_constant(2.0, q, mY)


def operator_norm(op: OperatorInstance, opts: SearchOptions | None = None, rng=None,
                  allow_heuristic: bool = True) -> CertifiedValue:
    """||S : l_p -> l_q|| with the maximizing unit vector in ``point``."""
    opts = opts or DEFAULT_OPTIONS
    A = op.matrix
    p, q = op.pair
    mY, mX = A.shape
    if not np.any(A):
        e = np.zeros(mX)
        e[0] = 1.0
        return CertifiedValue.exact(0.0, "zero", e)
    if p == 1:
        norms = lp_norm(A, q, axis=0)
        j = int(np.argmax(norms))
        x = np.zeros(mX)
        x[j] = 1.0
        return CertifiedValue.exact(norms[j], "column-max", x)
    if q == INF:
        pd = dual_exponent(p)
        norms = lp_norm(A, pd, axis=1)
        i = int(np.argmax(norms))
        x = norming_functional(SequenceSpace(mX, pd), A[i])
        return CertifiedValue.exact(norms[i], "row-max", x)
    if p == 2 and q == 2:
        U, s, Vt = svd(A)
        return CertifiedValue.exact(s[0], "svd", Vt[0].copy())
    if p == INF and mX <= opts.enum_cap:
        signs = sign_vectors(mX)
        vals = lp_norm(signs @ A.T, q, axis=1)
        k = int(np.argmax(vals))
        return CertifiedValue.exact(vals[k], "sign-enumeration", signs[k].copy())
    if q == 1 and mY <= opts.enum_cap:
        pd = dual_exponent(p)
        signs = sign_vectors(mY)
        G = signs @ A
        vals = lp_norm(G, pd, axis=1)
        k = int(np.argmax(vals))
        x = norming_functional(SequenceSpace(mX, pd), G[k])
        return CertifiedValue.exact(vals[k], "adjoint-sign-enumeration", x)
    if not allow_heuristic:
        raise CapabilityError(f"no exact operator-norm path for {op.domain} -> {op.codomain}")

    rng = _rng(rng)
    X, Yd = SequenceSpace(mX, dual_exponent(p)), SequenceSpace(mY, q)

    def value(x):
        return float(lp_norm(A @ x, q)) / float(lp_norm(x, p))

    def step(x):
        y = A @ x
        if not np.any(y):
            return None
        g = A.T @ norming_functional(Yd, y)
        if not np.any(g):
            return None
        return norming_functional(X, g)

    _, _, Vt = svd(A)
    canonical = list(Vt[: min(3, len(Vt))]) + list(np.eye(mX))
    starts = _starts(mX, canonical, opts.restarts, p, rng)
    lower, x = _ascend(starts, step, value, opts.rel_tol, opts.max_iter)
    upper = _bridge_upper(A, p, q)
    return CertifiedValue.bounds(lower, upper, ["ascent", "l2-bridge"], point=x)


# -- subspace helpers -------------------------------------------------------


def _subspace_pair(dim, basis=None, annihilator=None):
    """Orthonormal bases (Q of M, P of its orthogonal complement)."""
    if basis is not None:
        B = np.asarray(basis, dtype=float)
        if B.ndim == 1:
            B = B[:, None]
        if B.shape[0] != dim:
            raise InputError(f"basis vectors of length {B.shape[0]} in dimension {dim}")
        if B.shape[1] and numerical_rank(B) < B.shape[1]:
            raise DegenerateInputError("subspace basis has dependent columns")
        Q = orthonormal_basis(B, dim)
        P = null_space_basis(Q.T, dim) if Q.shape[1] else np.eye(dim)
        return Q, P
    if annihilator is not None and np.size(annihilator):
        F = np.array(annihilator, dtype=float, ndmin=2)
        Q = null_space_basis(F, dim)
        P = orthonormal_basis(F.T, dim)
        return Q, P
    return np.eye(dim), np.zeros((dim, 0))


def l1_ball_section_vertices(Q: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Vertices of {x in span(Q) : ||x||_1 <= 1}, one per row (with +-).

    A vertex has minimal support T; the annihilator restricted to T then has
    a one-dimensional kernel. Enumerating all supports up to codim + 1 covers
    every vertex (plus harmless extra feasible points).
    """
    m = Q.shape[0]
    r = P.shape[1]
    F = P.T
    pts = []
    for size in range(1, min(r + 1, m) + 1):
        for T in itertools.combinations(range(m), size):
            if r == 0:
                z = np.ones(1)
            else:
                sub = F[:, T]
                _, s, Vt = np.linalg.svd(sub, full_matrices=True)
                rank = int(np.count_nonzero(s > max(sub.shape) * 1e-12 * max(1.0, s[0] if s.size else 1.0)))
                if size - rank != 1:
                    continue
                z = Vt[-1]
            x = np.zeros(m)
            x[list(T)] = z
            n1 = np.abs(x).sum()
            if n1 == 0:
                continue
            x /= n1
            pts.append(x)
            pts.append(-x)
    return np.array(pts).reshape(-1, m)


def linf_ball_section_vertices(Q: np.ndarray, max_count: int) -> np.ndarray | None:
    """Vertices of {x in span(Q) : ||x||_inf <= 1}; None if over ``max_count``."""
    m, k = Q.shape
    if k == 0:
        return np.zeros((0, m))
    if math.comb(m, k) * 2 ** k > max_count:
        return None
    signs = sign_vectors(k)
    pts = []
    for R in itertools.combinations(range(m), k):
        QR = Q[list(R)]
        if abs(np.linalg.det(QR)) < 1e-12:
            continue
        X = Q @ np.linalg.solve(QR, signs.T)
        ok = np.abs(X).max(axis=0) <= 1.0 + 1e-12
        if np.any(ok):
            pts.append(X[:, ok].T)
    if not pts:
        return np.zeros((0, m))
    out = np.vstack(pts)
    return out / np.maximum(np.abs(out).max(axis=1, keepdims=True), 1.0)


# -- restricted norm ---------------------------------------------------------


def restricted_norm(op: OperatorInstance, basis=None, *, annihilator=None,
                    opts: SearchOptions | None = None, rng=None,
                    search: bool = True) -> CertifiedValue:
    """||S J_M|| = max{||Sx|| : x in M, ||x|| <= 1}.

    M is given by a basis (columns) or as the kernel of ``annihilator`` rows.
    With ``search=False`` the ascent is skipped on non-exact paths, leaving
    the bridge upper bound (useful for ranking candidates).
    """
    opts = opts or DEFAULT_OPTIONS
    A = op.matrix
    p, q = op.pair
    mY, mX = A.shape
    Q, P = _subspace_pair(mX, basis, annihilator)
    k = Q.shape[1]
    if k == 0:
        return CertifiedValue.exact(0.0, "trivial-subspace", np.zeros(mX))
    if P.shape[1] == 0:
        out = operator_norm(op, opts, rng)
        out.methods = ["full-subspace"] + out.methods
        return out
    AQ = A @ Q
    if not np.any(np.abs(AQ) > 0):
        return CertifiedValue.exact(0.0, "kills-subspace", Q[:, 0].copy())
    if p == 2 and q == 2:
        U, s, Vt = svd(AQ)
        return CertifiedValue.exact(s[0], "svd-restricted", Q @ Vt[0])
    if q == INF and p in (1.0, 2.0, INF):
        pd = dual_exponent(p)
        space = SequenceSpace(mX, pd)
        if p == 2:
            norms = np.linalg.norm(A @ Q, axis=1)
            i = int(np.argmax(norms))
            x = Q @ (Q.T @ A[i])
            x /= np.linalg.norm(x)
            return CertifiedValue.exact(norms[i], "row-projection", x)
        best = None
        for i in range(mY):
            d = distance_to_subspace(A[i], P, space)
            if best is None or d.upper > best[1].upper:
                best = (i, d)
        i, d = best
        x = d.functional
        attained = float(lp_norm(A @ x, INF))
        lower = max(d.lower, attained)
        return CertifiedValue.bounds(lower, max(d.upper, lower), ["row-distance-duality"], point=x)
    if p == 1 and mX <= opts.vertex_cap:
        V = l1_ball_section_vertices(Q, P)
        vals = lp_norm(V @ A.T, q, axis=1)
        j = int(np.argmax(vals))
        return CertifiedValue.exact(vals[j], "l1-section-vertices", V[j].copy())
    if p == INF:
        V = linf_ball_section_vertices(Q, 2 ** opts.enum_cap)
        if V is not None and len(V):
            vals = lp_norm(V @ A.T, q, axis=1)
            j = int(np.argmax(vals))
            return CertifiedValue.exact(vals[j], "linf-section-vertices", V[j].copy())

    # bridge upper: ||Sx||_q <= c(2,q) ||AQ||_2 ||x||_2 <= c(2,q) s1(AQ) c(p,2) ||x||_p
    s = singular_values(AQ)
    upper = embedding_constant(p, 2.0, mX) * float(s[0]) * embedding_constant(2.0, q, mY)
    full = operator_norm(op, opts, rng)
    if full.upper is not None:
        upper = min(upper, full.upper)
    methods = ["l2-bridge"]
    Xd = SequenceSpace(mX, dual_exponent(p))
    Yd = SequenceSpace(mY, q)

    def value(x):
        n = float(lp_norm(x, p))
        return float(lp_norm(A @ x, q)) / n if n > 0 else 0.0

    def step(x):
        y = A @ x
        if not np.any(y):
            return None
        g = A.T @ norming_functional(Yd, y)
        d = distance_to_subspace(g, P, Xd)
        b = d.functional
        if not np.any(b):
            return None
        return b - P @ (P.T @ b)

    _, _, Vt = svd(AQ)
    canonical = [Q @ v for v in Vt[: min(3, len(Vt))]] + [Q @ e for e in np.eye(k)]
    count = opts.inner_restarts if search else 1
    starts = _starts(mX, canonical, count, p, _rng(rng))
    starts = [x - P @ (P.T @ x) for x in starts]
    iters = opts.max_iter if search else 0
    lower, x = _ascend(starts, step, value, opts.rel_tol, iters)
    if search:
        methods.insert(0, "ascent")
    if x is not None:
        x = x / float(lp_norm(x, p))
    return CertifiedValue.bounds(lower, upper, methods, point=x)


# -- quotient norm -----------------------------------------------------------


def quotient_norm(op: OperatorInstance, basis=None, *, opts: SearchOptions | None = None,
                  rng=None, search: bool = True) -> CertifiedValue:
    """||Q_N S|| = max over the domain ball of the distance of Sx to span(N)."""
    opts = opts or DEFAULT_OPTIONS
    A = op.matrix
    p, q = op.pair
    mY, mX = A.shape
    Qn, Pn = _subspace_pair(mY, basis if basis is not None else np.zeros((mY, 0)))
    k = Qn.shape[1]
    Y = op.codomain
    if k == 0:
        out = operator_norm(op, opts, rng)
        out.methods = ["trivial-quotient"] + out.methods
        return out
    if Pn.shape[1] == 0:
        return CertifiedValue.exact(0.0, "full-quotient", np.eye(mX)[0])
    R = Pn @ (Pn.T @ A)  # component outside span(N) in the l_2 sense
    if not np.any(np.abs(R) > 1e-14 * max(1.0, np.abs(A).max())):
        return CertifiedValue.exact(0.0, "range-inside", np.eye(mX)[0])

    if p == 1 or (p == INF and (mX <= opts.lp_enum_cap or (q == 2 and mX <= opts.enum_cap))):
        if p == 1:
            pts = np.eye(mX)
        else:
            pts = sign_vectors(mX)[2 ** (mX - 1):]  # +-x give the same distance
        if q == 2:
            vals = np.linalg.norm(pts @ R.T, axis=1)
            j = int(np.argmax(vals))
            return CertifiedValue.exact(vals[j], "extreme-points", pts[j].copy())
        best = None
        for j, x in enumerate(pts):
            d = distance_to_subspace(A @ x, Qn, Y)
            if best is None or d.upper > best[1].upper:
                best = (j, d)
        j, d = best
        tag = "extreme-points" if Y.exponent in (1.0, INF) else "extreme-points-convex"
        return CertifiedValue.bounds(d.lower, d.upper, [tag], point=pts[j].copy())
    if p == 2 and q == 2:
        U, s, Vt = svd(R)
        return CertifiedValue.exact(s[0], "svd-quotient", Vt[0].copy())
    Xd = SequenceSpace(mX, dual_exponent(p))
    if q in (1.0, INF):
        # ||Q_N S|| = max{||S^T b||_{p'} : b vanishes on N, ||b||_{q'} <= 1}
        if q == INF and mY <= opts.vertex_cap:
            V = l1_ball_section_vertices(Pn, Qn)
        elif q == 1:
            V = linf_ball_section_vertices(Pn, 2 ** opts.enum_cap)
        else:
            V = None
        if V is not None and len(V):
            G = V @ A
            vals = lp_norm(G, Xd.exponent, axis=1)
            j = int(np.argmax(vals))
            if vals[j] == 0:
                return CertifiedValue.exact(0.0, "adjoint-section-vertices", np.eye(mX)[0])
            x = norming_functional(Xd, G[j])
            d = distance_to_subspace(A @ x, Qn, Y)
            lower = max(d.lower, float(V[j] @ (A @ x)))
            return CertifiedValue.bounds(min(lower, vals[j]), vals[j], ["adjoint-section-vertices"], point=x)

    # bridge: dist(Sx, N) <= ||(I - P_N) S x||_q
    upper = operator_norm(OperatorInstance(R, op.domain, op.codomain), opts, rng).upper
    full = operator_norm(op, opts, rng).upper
    if full is not None:
        upper = min(upper, full)
    methods = ["residual-bridge"]

    def value(x):
        n = float(lp_norm(x, p))
        return distance_to_subspace(A @ x, Qn, Y).lower / n if n > 0 else 0.0

    def step(x):
        d = distance_to_subspace(A @ x, Qn, Y)
        g = A.T @ d.functional
        if not np.any(g):
            return None
        return norming_functional(Xd, g)

    _, _, Vt = svd(R)
    canonical = list(Vt[: min(3, len(Vt))]) + list(np.eye(mX))
    count = opts.inner_restarts if search else 1
    starts = _starts(mX, canonical, count, p, _rng(rng))
    lower, x = _ascend(starts, step, value, opts.rel_tol, opts.max_iter if search else 0)
    if search:
        methods.insert(0, "ascent")
    return CertifiedValue.bounds(lower, upper, methods, point=x)
