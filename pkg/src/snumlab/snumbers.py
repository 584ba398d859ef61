"""Certified bounds for the six s-number sequences of one operator.

Each kind contributes the bounds it can certify directly:

* a_n: uppers ||S - L|| for explicit rank < n matrices L
* c_n, d_n: uppers ||S J_M|| and ||Q_N S|| for explicit candidate subspaces
* b_n: lowers from explicit n-dimensional subspaces (bridge or mesh certificate)
* x_n, h_n: lowers a_n(SA)/||A|| and s_n(BSA)/(||A|| ||B||) for explicit factors

Everything else comes from :func:`~snumlab.lattice.propagate_lattice`.
Candidate lists always start with deterministic canonical choices (singular
vectors, identities, coordinate selections, the witness chains), followed by
seeded random ones and a short seeded local search.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.fft import idct
from scipy.linalg import qr

from .errors import InputError, SnumError
from .lattice import KINDS, SNumberReport, propagate_lattice
from .linalg import distance_to_subspace, numerical_rank, orthonormal_basis, singular_values, svd
from .opnorm import CertifiedValue, SearchOptions, operator_norm, quotient_norm, restricted_norm
from .spaces import (
    OperatorInstance,
    SequenceSpace,
    dual_exponent,
    embedding_constant,
    format_exponent,
    lp_norm,
    norming_functional,
)
from .witness import gelfand_chain, kolmogorov_chain


@dataclass
class ProfileConfig:
    seed: int = 0
    restarts: int = 64
    inner_restarts: int = 8
    enum_cap: int = 20
    vertex_cap: int = 6
    tol_exact: float = 1e-9
    tol_opt: float = 1e-6
    epsilon: float = 1e-3
    refine_steps: int = 12
    hilbert_steps: int = 12
    random_candidates: int = 2
    mesh_points: int = 20000
    mesh_max_dim: int = 4
    use_chains: bool = True

    def __post_init__(self):
        if self.restarts < 1 or self.inner_restarts < 1:
            raise InputError("restarts must be >= 1")
        if self.tol_exact <= 0 or self.tol_opt <= 0 or self.epsilon <= 0:
            raise InputError("tolerances and epsilon must be positive")

    def options(self) -> SearchOptions:
        return SearchOptions(restarts=self.restarts, inner_restarts=self.inner_restarts,
                             enum_cap=self.enum_cap, vertex_cap=self.vertex_cap)

    def to_dict(self) -> dict:
        return asdict(self)


# -- shared per-operator state ------------------------------------------------


class _Context:
    """Caches everything the six computations share for one operator."""

    def __init__(self, op: OperatorInstance, nmax: int | None, cfg: ProfileConfig):
        self.op = op
        self.cfg = cfg
        self.opts = cfg.options()
        mY, mX = op.shape
        if nmax is None:
            nmax = min(mY, mX)
        if not isinstance(nmax, (int, np.integer)) or nmax < 1 or nmax > min(mY, mX) + 1:
            raise InputError(f"nmax must be in 1..{min(mY, mX) + 1}, got {nmax!r}")
        self.nmax = int(nmax)
        self.U, self.s, self.Vt = svd(op.matrix)
        self.rank = numerical_rank(op.matrix)
        self.norm = operator_norm(op, self.opts, self.rng("norm"))
        self.gelfand_best = {}
        self.kolmogorov_best = {}
        self._chains = None

    def rng(self, tag: str):
        key = sum((i + 1) * ord(ch) for i, ch in enumerate(tag))
        return np.random.default_rng(np.random.SeedSequence([self.cfg.seed, key]))

    @property
    def chains(self):
        if self._chains is None:
            self._chains = {}
            n = min(self.nmax, self.rank, *self.op.shape)
            if self.cfg.use_chains and not self.op.is_hilbert and n >= 1:
                for name, build in (("gelfand", gelfand_chain), ("kolmogorov", kolmogorov_chain)):
                    try:
                        self._chains[name] = build(self.op, n, self.cfg.epsilon, self.opts,
                                                   self.rng("chain-" + name))
                    except SnumError:
                        pass
        return self._chains

    def sigma(self, n: int) -> float:
        return float(self.s[n - 1]) if n <= len(self.s) else 0.0


def _safe(score):
    def wrapped(x):
        try:
            v = score(x)
        except (SnumError, np.linalg.LinAlgError):
            return math.inf
        return math.inf if v is None or not np.isfinite(v) else float(v)
    return wrapped


def _local_search(x0, score, rng, steps):
    """Seeded random-perturbation descent; returns (best point, best score)."""
    best, fbest = x0, score(x0)
    if steps <= 0 or not np.isfinite(fbest) or x0.size == 0:
        return best, fbest
    scale = float(np.linalg.norm(x0)) / math.sqrt(x0.size) or 1.0
    delta = 0.3
    for _ in range(steps):
        cand = best + delta * scale * rng.standard_normal(best.shape)
        f = score(cand)
        if f < fbest * (1.0 - 1e-12):
            best, fbest = cand, f
            delta *= 1.5
        else:
            delta *= 0.5
        if delta < 1e-6:
            break
    return best, fbest


def _pick(cands, score):
    """Lexicographic (score, generation index) minimum over labelled candidates."""
    best = None
    for idx, (label, x) in enumerate(cands):
        f = score(x)
        if best is None or (f, idx) < (best[0], best[1]):
            best = (f, idx, label, x)
    return best


def _dct_rows(k: int, m: int) -> np.ndarray:
    """First k orthonormal DCT-II basis vectors of length m (constant first)."""
    return idct(np.eye(m)[:k], type=2, norm="ortho", axis=1)


def _exact_zero(method="S5:rank"):
    return CertifiedValue.exact(0.0, method)


def _hilbert_exact(ctx, n):
    return CertifiedValue.exact(ctx.sigma(n), "svd")


def _norm_value(ctx):
    v = ctx.norm
    return CertifiedValue.bounds(v.lower, v.upper, ["operator-norm"] + list(v.methods))


# -- Gelfand / Kolmogorov --------------------------------------------------------


def _gelfand(ctx: _Context) -> SNumberReport:
    op, cfg = ctx.op, ctx.cfg
    S = op.matrix
    mY, mX = op.shape
    rng = ctx.rng("gelfand")
    q = op.codomain.exponent
    col_norms = lp_norm(S, q, axis=0)
    vals, wit = [], {}

    def score(F):
        return restricted_norm(op, annihilator=F, opts=ctx.opts, search=False).upper

    score = _safe(score)
    for n in range(1, ctx.nmax + 1):
        if n > ctx.rank:
            vals.append(_exact_zero())
            continue
        if op.is_hilbert:
            vals.append(_hilbert_exact(ctx, n))
            ctx.gelfand_best[n] = ctx.Vt[: n - 1]
            continue
        if n == 1:
            vals.append(_norm_value(ctx))
            continue
        k = n - 1
        cands = [("svd", ctx.Vt[:k].copy())]
        chain = ctx.chains.get("gelfand")
        if chain is not None and chain.length >= k:
            cands.append(("chain", np.vstack([S.T @ b for b in chain.bs[:k]])))
        cands.append(("coordinate", np.eye(mX)[np.argsort(-col_norms, kind="stable")[:k]]))
        cands.append(("dct", _dct_rows(k, mX)))
        for _ in range(cfg.random_candidates):
            cands.append(("random", rng.standard_normal((k, mX))))
        f, _, label, F = _pick(cands, score)
        F2, f2 = _local_search(F, score, rng, cfg.refine_steps)
        if f2 < f:
            F, f, label = F2, f2, label + "+refined"
        ctx.gelfand_best[n] = F
        wit[n] = {"functionals": F.tolist(), "candidate": label}
        vals.append(CertifiedValue.bounds(0.0, f, ["subspace:" + label]))
    return SNumberReport("gelfand", vals, wit)


def _kolmogorov(ctx: _Context) -> SNumberReport:
    op, cfg = ctx.op, ctx.cfg
    S = op.matrix
    mY, mX = op.shape
    rng = ctx.rng("kolmogorov")
    row_norms = lp_norm(S, dual_exponent(op.domain.exponent), axis=1)
    vals, wit = [], {}

    def score(N):
        return quotient_norm(op, N, opts=ctx.opts, search=False).upper

    score = _safe(score)
    for n in range(1, ctx.nmax + 1):
        if n > ctx.rank:
            vals.append(_exact_zero())
            continue
        if op.is_hilbert:
            vals.append(_hilbert_exact(ctx, n))
            ctx.kolmogorov_best[n] = ctx.U[:, : n - 1]
            continue
        if n == 1:
            vals.append(_norm_value(ctx))
            continue
        k = n - 1
        cands = [("svd", ctx.U[:, :k].copy())]
        chain = ctx.chains.get("kolmogorov")
        if chain is not None and chain.length >= k:
            cands.append(("chain", np.column_stack([S @ x for x in chain.xs[:k]])))
        cands.append(("coordinate", np.eye(mY)[:, np.argsort(-row_norms, kind="stable")[:k]]))
        cands.append(("dct", _dct_rows(k, mY).T))
        for _ in range(cfg.random_candidates):
            cands.append(("random", rng.standard_normal((mY, k))))
        f, _, label, N = _pick(cands, score)
        N2, f2 = _local_search(N, score, rng, cfg.refine_steps)
        if f2 < f:
            N, f, label = N2, f2, label + "+refined"
        ctx.kolmogorov_best[n] = N
        wit[n] = {"subspace": N.tolist(), "candidate": label}
        vals.append(CertifiedValue.bounds(0.0, f, ["subspace:" + label]))
    return SNumberReport("kolmogorov", vals, wit)


# -- approximation numbers -----------------------------------------------------


def _rows_from_functionals(op, F):
    """Rank < n matrix whose rows are best l_{p'} approximations inside span(F)."""
    S = op.matrix
    space = SequenceSpace(op.domain.dim, dual_exponent(op.domain.exponent))
    return np.vstack([distance_to_subspace(r, F.T, space).nearest for r in S])


def _columns_from_subspace(op, N):
    """Rank < n matrix whose columns are best approximations inside span(N)."""
    S = op.matrix
    return np.column_stack([distance_to_subspace(c, N, op.codomain).nearest for c in S.T])


def _approximation(ctx: _Context) -> SNumberReport:
    op, cfg = ctx.op, ctx.cfg
    S = op.matrix
    p, q = op.pair
    rng = ctx.rng("approximation")
    vals, wit = [], {}

    def err(L):
        return operator_norm(OperatorInstance(S - L, op.domain, op.codomain), ctx.opts).upper

    err = _safe(err)
    for n in range(1, ctx.nmax + 1):
        if n > ctx.rank:
            vals.append(_exact_zero())
            continue
        if op.is_hilbert:
            vals.append(_hilbert_exact(ctx, n))
            continue
        if n == 1:
            vals.append(_norm_value(ctx))
            continue
        k = n - 1
        cands = [("truncated-svd", (ctx.U[:, :k] * ctx.s[:k]) @ ctx.Vt[:k])]
        F = ctx.gelfand_best.get(n)
        N = ctx.kolmogorov_best.get(n)
        if F is not None and q == math.inf and p in (1.0, 2.0, math.inf):
            cands.append(("gelfand-rows", _rows_from_functionals(op, F)))
        if N is not None and p == 1 and q in (1.0, 2.0, math.inf):
            cands.append(("kolmogorov-columns", _columns_from_subspace(op, N)))
        if N is not None:
            Qn = orthonormal_basis(N, op.codomain.dim)
            cands.append(("projected-range", Qn @ (Qn.T @ S)))
        if F is not None:
            Qf = orthonormal_basis(np.asarray(F).T, op.domain.dim)
            cands.append(("projected-domain", (S @ Qf) @ Qf.T))
        f, _, label, L = _pick(cands, err)

        # alternating refinement of a rank-k factorization L = G @ H
        Ul, sl, Vl = svd(L)
        G, H = Ul[:, :k] * sl[:k], Vl[:k]
        for _ in range(2):
            G2, _ = _local_search(G, lambda g: err(g @ H), rng, cfg.refine_steps // 2)
            H2, fh = _local_search(H, lambda h: err(G2 @ h), rng, cfg.refine_steps // 2)
            if fh >= f:
                break
            G, H, f = G2, H2, fh
            label = label.split("+")[0] + "+alternating"
        wit[n] = {"candidate": label, "rank": k}
        vals.append(CertifiedValue.bounds(0.0, f, ["low-rank:" + label]))
    return SNumberReport("approximation", vals, wit)


# -- Bernstein numbers ---------------------------------------------------------


def _factor_norm_2_to_p(Q, space_p: SequenceSpace, opts) -> float:
    return operator_norm(OperatorInstance(Q, SequenceSpace(Q.shape[1], 2), space_p), opts).upper


def _mesh_lower(S, Q, p, q, points, opts):
    """Certified lower bound for min_{x in span Q} ||Sx||_q / ||x||_p.

    The ratio is evaluated on a grid over the surface of the cube in the
    coefficient space; a Lipschitz bound on the ratio closes the gap between
    grid points. Returns (certified lower, grid minimum).
    """
    mY, mX = S.shape
    n = Q.shape[1]
    h = max(2, int((points / (2 * n)) ** (1.0 / (n - 1))))
    axis = np.linspace(-1.0, 1.0, h)
    grid = np.array(np.meshgrid(*([axis] * (n - 1)), indexing="ij")).reshape(n - 1, -1).T
    faces = []
    for i in range(n):
        for sgn in (-1.0, 1.0):
            u = np.insert(grid, i, sgn, axis=1)
            faces.append(u)
    Ugrid = np.vstack(faces)
    SQ = S @ Q
    F = lp_norm(Ugrid @ SQ.T, q, axis=1)
    G = lp_norm(Ugrid @ Q.T, p, axis=1)
    g = F / G
    gmin = float(g.min())
    LF = _factor_norm_2_to_p(SQ, SequenceSpace(mY, q), opts)
    LG = _factor_norm_2_to_p(Q, SequenceSpace(mX, p), opts)
    Gmin = 1.0 / embedding_constant(p, 2.0, mX)
    Fmax = LF * math.sqrt(n)
    lip = LF / Gmin + Fmax * LG / Gmin**2
    radius = (1.0 / (h - 1)) * math.sqrt(n - 1)
    lower = gmin * (1.0 - 1e-12) - lip * radius
    return max(lower, 0.0), gmin


def _bernstein(ctx: _Context) -> SNumberReport:
    op, cfg = ctx.op, ctx.cfg
    S = op.matrix
    p, q = op.pair
    mY, mX = op.shape
    X = op.domain
    col_norms = lp_norm(S, q, axis=0)
    c_q2 = embedding_constant(q, 2.0, mY)
    vals, wit = [], {}
    for n in range(1, ctx.nmax + 1):
        if n > ctx.rank:
            vals.append(_exact_zero())
            continue
        if op.is_hilbert:
            vals.append(_hilbert_exact(ctx, n))
            continue
        if n == 1:
            x = ctx.norm.point
            ratio = float(lp_norm(S @ x, q)) / float(lp_norm(x, p))
            vals.append(CertifiedValue.bounds(ratio, None, ["norm-attaining-line"]))
            continue
        cands = [("svd", ctx.Vt[:n].T)]
        chain = ctx.chains.get("gelfand")
        if chain is not None and chain.length >= n:
            cands.append(("chain", np.column_stack(chain.xs[:n])))
        cands.append(("coordinate", np.eye(mX)[:, np.argsort(-col_norms, kind="stable")[:n]]))
        _, _, piv = qr(S, pivoting=True, mode="economic")
        cands.append(("pivoted", np.eye(mX)[:, piv[:n]]))
        best = (0.0, None, None)
        estimate = None
        for label, M in cands:
            Q = orthonormal_basis(M, mX)
            if Q.shape[1] < n:
                continue
            smin = float(singular_values(S @ Q)[-1])
            beta = _factor_norm_2_to_p(Q, X, ctx.opts)
            lower = smin / (c_q2 * beta)
            how = "bridge"
            if n <= cfg.mesh_max_dim:
                mesh, gmin = _mesh_lower(S, Q, p, q, cfg.mesh_points, ctx.opts)
                estimate = gmin if estimate is None else max(estimate, gmin)
                if mesh > lower:
                    lower, how = mesh, "mesh"
            if lower > best[0]:
                best = (lower, label, how)
        lower, label, how = best
        methods = [f"subspace:{label}:{how}"] if label else []
        vals.append(CertifiedValue.bounds(lower, None, methods, estimate=estimate))
        if label:
            wit[n] = {"candidate": label, "certificate": how}
    return SNumberReport("bernstein", vals, wit)


# -- Weyl and Hilbert numbers ----------------------------------------------------


def _approx_lower_from_l2(T, q, n, opts):
    """Certified lower bound for a_n(T : l_2^k -> l_q^m)."""
    m, k = T.shape
    if n > min(m, k):
        return 0.0
    s = singular_values(T)
    if q == 2:
        return float(s[n - 1])
    out = float(s[n - 1]) / embedding_constant(q, 2.0, m)
    _, _, piv = qr(T.T, pivoting=True, mode="economic")
    rows = piv[:n]
    sel = singular_values(T[rows])
    out = max(out, float(sel[n - 1]) / embedding_constant(q, 2.0, n))
    if n == 1:
        out = max(out, operator_norm(OperatorInstance(T, SequenceSpace(k, 2), SequenceSpace(m, q)), opts).lower)
    return out


def _weyl(ctx: _Context) -> SNumberReport:
    op, cfg = ctx.op, ctx.cfg
    S = op.matrix
    p, q = op.pair
    mY, mX = op.shape
    X = op.domain
    rng = ctx.rng("weyl")
    nmax = min(ctx.nmax, ctx.rank)
    best = {n: (0.0, None) for n in range(1, ctx.nmax + 1)}
    best_A = {}

    def ratios(A, ns):
        normA = _factor_norm_2_to_p(A, X, ctx.opts)
        if normA <= 0:
            return {}
        T = S @ A
        return {n: _approx_lower_from_l2(T, q, n, ctx.opts) / normA for n in ns if n <= A.shape[1]}

    cands = [("identity", np.eye(mX)), ("right-singular", ctx.Vt.T.copy())]
    for n in range(1, nmax + 1):
        cands.append((f"right-singular-{n}", ctx.Vt[:n].T.copy()))
    for name, chain in ctx.chains.items():
        for j in range(1, chain.length + 1):
            cands.append((f"chain-{name}-{j}", chain.A[:, :j]))
    x = ctx.norm.point
    if x is not None and np.any(x):
        cands.append(("norm-attaining", (x / float(lp_norm(x, p)))[:, None]))
    ns = range(1, nmax + 1)
    for label, A in cands:
        for n, r in ratios(A, ns).items():
            if r > best[n][0]:
                best[n] = (r, label)
                best_A[n] = A
    if not op.is_hilbert:
        for n in ns:
            if n not in best_A:
                continue
            A0 = best_A[n]
            score = _safe(lambda A, n=n: -ratios(A, [n]).get(n, 0.0))
            A1, f1 = _local_search(A0, score, rng, cfg.hilbert_steps)
            if -f1 > best[n][0]:
                best[n] = (-f1, best[n][1] + "+refined")
    vals = []
    for n in range(1, ctx.nmax + 1):
        if n > ctx.rank:
            vals.append(_exact_zero())
            continue
        r, label = best[n]
        vals.append(CertifiedValue.bounds(r, None, [f"factor:{label}"] if label else []))
    return SNumberReport("weyl", vals, {n: {"candidate": best[n][1]} for n in best if best[n][1]})


def rank_one_factors(op: OperatorInstance, norm: CertifiedValue):
    """(A, B) = (x, b^T) with x the norm-attaining point and b norming Sx."""
    x = norm.point
    if x is None or not np.any(op.matrix @ x):
        return None
    x = x / float(lp_norm(x, op.domain.exponent))
    b = norming_functional(op.codomain, op.matrix @ x)
    return x[:, None], b[None, :]


def rank_one_hilbert_lower(op: OperatorInstance, norm: CertifiedValue | None = None) -> float:
    """h_1 >= <Sx, b> / (||x|| ||b||_*); equals ||S|| whenever the norm is attained at x."""
    norm = norm or operator_norm(op)
    pair = rank_one_factors(op, norm)
    if pair is None:
        return 0.0
    A, B = pair
    x, b = A[:, 0], B[0]
    dual = SequenceSpace(op.codomain.dim, dual_exponent(op.codomain.exponent))
    return abs(float(b @ op.matrix @ x)) / (float(lp_norm(x, op.domain.exponent)) * float(lp_norm(b, dual.exponent)))


def _hilbert(ctx: _Context) -> SNumberReport:
    op, cfg = ctx.op, ctx.cfg
    S = op.matrix
    p, q = op.pair
    mY, mX = op.shape
    X, Y = op.domain, op.codomain
    rng = ctx.rng("hilbert")
    nmax = min(ctx.nmax, ctx.rank)
    best = {n: (0.0, None) for n in range(1, ctx.nmax + 1)}
    best_pair = {}

    def ratios(A, B, ns):
        k = B.shape[0]
        normA = _factor_norm_2_to_p(A, X, ctx.opts)
        normB = operator_norm(OperatorInstance(B, Y, SequenceSpace(k, 2)), ctx.opts).upper
        if normA <= 0 or normB <= 0:
            return {}
        s = singular_values(B @ S @ A)
        return {n: float(s[n - 1]) / (normA * normB) for n in ns if n <= len(s)}

    cands = [("identity", np.eye(mX), np.eye(mY)),
             ("singular", ctx.Vt.T.copy(), ctx.U.T.copy())]
    for n in range(1, nmax + 1):
        cands.append((f"singular-{n}", ctx.Vt[:n].T.copy(), ctx.U[:, :n].T.copy()))
        _, _, pc = qr(S, pivoting=True, mode="economic")
        J = pc[:n]
        _, _, pr = qr(S[:, J].T, pivoting=True, mode="economic")
        R = pr[:n]
        cands.append((f"coordinate-{n}", np.eye(mX)[:, J], np.eye(mY)[R]))
    for name, chain in ctx.chains.items():
        for j in range(1, chain.length + 1):
            cands.append((f"chain-{name}-{j}", chain.A[:, :j], chain.B[:j]))
    pair = rank_one_factors(op, ctx.norm)
    if pair is not None:
        cands.append(("rank-one", *pair))
    ns = range(1, nmax + 1)
    for label, A, B in cands:
        for n, r in ratios(A, B, ns).items():
            if r > best[n][0]:
                best[n] = (r, label)
                best_pair[n] = (A, B)
    if not op.is_hilbert:
        for n in ns:
            if n not in best_pair:
                continue
            A0, B0 = best_pair[n]
            shapeA = A0.shape
            z0 = np.concatenate([A0.ravel(), B0.ravel()])

            def score(z, n=n, shapeA=shapeA, shapeB=B0.shape):
                A = z[: A0.size].reshape(shapeA)
                B = z[A0.size:].reshape(shapeB)
                return -ratios(A, B, [n]).get(n, 0.0)

            z1, f1 = _local_search(z0, _safe(score), rng, cfg.hilbert_steps)
            if -f1 > best[n][0]:
                best[n] = (-f1, best[n][1] + "+refined")
    vals = []
    for n in range(1, ctx.nmax + 1):
        if n > ctx.rank:
            vals.append(_exact_zero())
            continue
        r, label = best[n]
        vals.append(CertifiedValue.bounds(r, None, [f"factors:{label}"] if label else []))
    return SNumberReport("hilbert", vals, {n: {"candidate": best[n][1]} for n in best if best[n][1]})


# -- orchestration -------------------------------------------------------------


@dataclass
class ProfileBundle:
    op: OperatorInstance
    nmax: int
    reports: dict
    norm: CertifiedValue
    rank: int
    chains: dict = field(default_factory=dict)
    config: ProfileConfig = field(default_factory=ProfileConfig)

    def interval(self, kind: str, n: int):
        v = self.reports[kind].values[n - 1]
        return v.lower, v.upper

    def to_dict(self, include_matrix: bool = False) -> dict:
        out = {
            "operator": {
                "rows": self.op.shape[0],
                "cols": self.op.shape[1],
                "domain_p": format_exponent(self.op.domain.exponent),
                "codomain_p": format_exponent(self.op.codomain.exponent),
            },
            "nmax": self.nmax,
            "rank": self.rank,
            "norm": self.norm.to_dict(),
            "reports": {k: self.reports[k].to_dict() for k in KINDS if k in self.reports},
        }
        if include_matrix:
            out["operator"]["data"] = self.op.matrix.ravel().tolist()
        return out


_BUILDERS = (
    ("gelfand", _gelfand),
    ("kolmogorov", _kolmogorov),
    ("approximation", _approximation),
    ("bernstein", _bernstein),
    ("weyl", _weyl),
    ("hilbert", _hilbert),
)


def raw_reports(op: OperatorInstance, nmax: int | None = None,
                config: ProfileConfig | None = None):
    """The six unpropagated reports plus the shared context."""
    ctx = _Context(op, nmax, config or ProfileConfig())
    reports = {kind: build(ctx) for kind, build in _BUILDERS}
    return reports, ctx


def profile(op: OperatorInstance, nmax: int | None = None,
            config: ProfileConfig | None = None) -> ProfileBundle:
    """All six s-number sequences for ``op``, propagated through the lattice."""
    cfg = config or ProfileConfig()
    reports, ctx = raw_reports(op, nmax, cfg)
    reports = propagate_lattice(reports, ctx.norm, ctx.rank)
    return ProfileBundle(op, ctx.nmax, reports, ctx.norm, ctx.rank, ctx.chains, cfg)


def approximation_numbers(op, nmax=None, config=None) -> SNumberReport:
    return profile(op, nmax, config).reports["approximation"]


def bernstein_numbers(op, nmax=None, config=None) -> SNumberReport:
    return profile(op, nmax, config).reports["bernstein"]


def gelfand_numbers(op, nmax=None, config=None) -> SNumberReport:
    return profile(op, nmax, config).reports["gelfand"]


def kolmogorov_numbers(op, nmax=None, config=None) -> SNumberReport:
    return profile(op, nmax, config).reports["kolmogorov"]


def weyl_numbers(op, nmax=None, config=None) -> SNumberReport:
    return profile(op, nmax, config).reports["weyl"]


def hilbert_numbers(op, nmax=None, config=None) -> SNumberReport:
    return profile(op, nmax, config).reports["hilbert"]
