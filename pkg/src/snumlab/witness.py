"""Executable form of the determinant argument bounding c_n and d_n by h_k.

Both chains pick unit vectors x_k and functionals b_k so that the matrix
(<S x_j, b_i>) is triangular. With A = [x_1 ... x_n] and B = rows b_i, the
n x n matrix S_n = B S A has determinant prod_k <S x_k, b_k>, its singular
values are a_k(S_n) <= ||A|| ||B|| h_k(S), and ||A||, ||B|| <= sqrt(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .lattice import propagate_lattice
from .linalg import determinant, distance_to_subspace, singular_values
from .opnorm import (
    EXACT,
    SearchOptions,
    operator_norm,
    quotient_norm,
    restricted_norm,
)
from .report import check_le, check_true
from .spaces import OperatorInstance, SequenceSpace, dual_norm, lp_norm, norming_functional

TRIANGULAR_TOL = 1e-10
TRUNCATION_TOL = 1e-10


@dataclass
class WitnessChain:
    variant: str
    epsilon: float
    xs: list = field(default_factory=list)
    bs: list = field(default_factory=list)
    diag: list = field(default_factory=list)
    links: list = field(default_factory=list)
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    Sn: np.ndarray | None = None
    normA: float = 0.0
    normB: float = 0.0
    det: float = 1.0
    hk_lowers: list = field(default_factory=list)
    truncated_at: int | None = None
    terminal_value: float | None = None

    @property
    def length(self) -> int:
        return len(self.xs)

    def triangularity_defect(self) -> float:
        """Largest |<S x_k, b_j>| over the entries that must vanish."""
        if self.Sn is None or self.length < 2:
            return 0.0
        if self.variant == "gelfand":
            off = np.triu(self.Sn, 1)  # <S x_k, b_j> = 0 for j < k
        else:
            off = np.tril(self.Sn, -1)  # <S x_j, b_k> = 0 for j < k
        return float(np.abs(off).max())

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "epsilon": self.epsilon,
            "length": self.length,
            "xs": [x.tolist() for x in self.xs],
            "bs": [b.tolist() for b in self.bs],
            "diag": list(self.diag),
            "links": self.links,
            "Sn": None if self.Sn is None else self.Sn.tolist(),
            "normA": self.normA,
            "normB": self.normB,
            "det": self.det,
            "hk_lowers": list(self.hk_lowers),
            "triangularity_defect": self.triangularity_defect(),
            "truncated_at": self.truncated_at,
            "terminal_value": self.terminal_value,
        }


def _factor_norms(op: OperatorInstance, A: np.ndarray, B: np.ndarray, opts):
    """Certified upper bounds for ||A : l_2^n -> X|| and ||B : Y -> l_2^n||."""
    n = A.shape[1]
    X, Y = op.domain, op.codomain
    trivial_a = math.sqrt(n) * max(float(lp_norm(A[:, k], X.exponent)) for k in range(n))
    trivial_b = math.sqrt(n) * max(dual_norm(Y, B[k]) for k in range(n))
    na = operator_norm(OperatorInstance(A, SequenceSpace(n, 2), X), opts).upper
    nb = operator_norm(OperatorInstance(B, Y, SequenceSpace(n, 2)), opts).upper
    return min(trivial_a, na), min(trivial_b, nb)


def _finish(chain: WitnessChain, op: OperatorInstance, opts):
    if chain.length == 0:
        chain.A = np.zeros((op.domain.dim, 0))
        chain.B = np.zeros((0, op.codomain.dim))
        chain.Sn = np.zeros((0, 0))
        chain.det = 1.0
        return chain
    chain.A = np.column_stack(chain.xs)
    chain.B = np.vstack(chain.bs)
    chain.Sn = chain.B @ op.matrix @ chain.A
    chain.normA, chain.normB = _factor_norms(op, chain.A, chain.B, opts)
    tri = np.tril(chain.Sn) if chain.variant == "gelfand" else np.triu(chain.Sn)
    chain.det = float(determinant(tri))
    s = singular_values(chain.Sn)
    chain.hk_lowers = [float(v) / (chain.normA * chain.normB) for v in s]
    return chain


def _check_args(op, n, epsilon):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"chain length must be a positive integer, got {n!r}")
    if n > min(op.shape):
        raise InputError(f"chain length {n} exceeds min dimension {min(op.shape)}")
    if not epsilon > 0:
        raise InputError("epsilon must be positive")


def gelfand_chain(op: OperatorInstance, n: int, epsilon: float = 1e-3,
                  opts: SearchOptions | None = None, rng=None) -> WitnessChain:
    """x_k maximizes ||Sx|| over M_k = {x : <Sx, b_j> = 0, j < k}; b_k norms S x_k."""
    _check_args(op, n, epsilon)
    S = op.matrix
    Y = op.codomain
    chain = WitnessChain("gelfand", float(epsilon))
    scale = operator_norm(op, opts, rng).upper or 0.0
    for k in range(1, n + 1):
        F = np.vstack([S.T @ b for b in chain.bs]) if chain.bs else None
        res = restricted_norm(op, annihilator=F, opts=opts, rng=rng)
        x = res.point
        y = S @ x if x is not None else None
        if x is None or lp_norm(y, Y.exponent) <= TRUNCATION_TOL * max(scale, 1e-300):
            chain.truncated_at = k
            chain.terminal_value = 0.0
            break
        x = x / max(float(lp_norm(x, op.domain.exponent)), 1.0)
        y = S @ x
        b = norming_functional(Y, y)
        v = float(y @ b)
        exact = res.status == EXACT
        chain.xs.append(x)
        chain.bs.append(b)
        chain.diag.append(v)
        chain.links.append({
            "k": k,
            "value": v,
            "restricted_norm_upper": res.upper,
            "exact": exact,
            "certified": exact,
            "c_upper": res.upper if exact else None,
            "relaxed_bound": (1.0 + epsilon) * v,
            "methods": list(res.methods),
        })
    return _finish(chain, op, opts)


def kolmogorov_chain(op: OperatorInstance, n: int, epsilon: float = 1e-3,
                     opts: SearchOptions | None = None, rng=None) -> WitnessChain:
    """x_k maximizes dist(Sx, N_k) with N_k = span{S x_j : j < k}; b_k is the
    dual certificate of that distance, so it vanishes on N_k."""
    _check_args(op, n, epsilon)
    S = op.matrix
    Y = op.codomain
    chain = WitnessChain("kolmogorov", float(epsilon))
    scale = operator_norm(op, opts, rng).upper or 0.0
    for k in range(1, n + 1):
        N = np.column_stack([S @ x for x in chain.xs]) if chain.xs else None
        res = quotient_norm(op, N, opts=opts, rng=rng)
        x = res.point
        if x is None:
            chain.truncated_at = k
            chain.terminal_value = 0.0
            break
        x = x / max(float(lp_norm(x, op.domain.exponent)), 1.0)
        d = distance_to_subspace(S @ x, N, Y)
        if d.upper <= TRUNCATION_TOL * max(scale, 1e-300):
            chain.truncated_at = k
            chain.terminal_value = 0.0
            break
        b = d.functional
        v = float((S @ x) @ b)
        exact = res.status == EXACT
        chain.xs.append(x)
        chain.bs.append(b)
        chain.diag.append(v)
        chain.links.append({
            "k": k,
            "value": v,
            "quotient_norm_upper": res.upper,
            "distance_gap": d.gap,
            "exact": exact,
            "certified": exact,
            "d_upper": res.upper if exact else None,
            "relaxed_bound": (1.0 + epsilon) * v,
            "methods": list(res.methods),
        })
    return _finish(chain, op, opts)


def chain_identity_checks(chain: WitnessChain, op: OperatorInstance, tag: str = "") -> list:
    """The per-chain invariants as check records."""
    pre = f"{tag}{chain.variant}"
    recs = []
    if chain.length == 0:
        return [check_true(f"{pre}:nonempty", chain.truncated_at == 1, truncated_at=chain.truncated_at)]
    n = chain.length
    X, Y = op.domain, op.codomain
    recs.append(check_le(f"{pre}:triangular", chain.triangularity_defect(), 0.0, abs_tol=TRIANGULAR_TOL))
    recs.append(check_le(f"{pre}:x_in_ball", max(float(lp_norm(x, X.exponent)) for x in chain.xs),
                         1.0, abs_tol=1e-12))
    recs.append(check_le(f"{pre}:b_in_dual_ball", max(dual_norm(Y, b) for b in chain.bs), 1.0,
                         abs_tol=1e-12))
    root = math.sqrt(n)
    recs.append(check_le(f"{pre}:normA", chain.normA, root, rel=1e-9))
    recs.append(check_le(f"{pre}:normB", chain.normB, root, rel=1e-9))
    prod_v = float(np.prod(chain.diag))
    recs.append(check_le(f"{pre}:det_is_diag_product", abs(chain.det - prod_v), 0.0,
                         abs_tol=1e-12 * abs(prod_v), det=chain.det, prod_diag=prod_v))
    prod_s = float(np.prod(singular_values(chain.Sn)))
    recs.append(check_le(f"{pre}:det_is_singular_product", abs(abs(chain.det) - prod_s), 0.0,
                         abs_tol=1e-8 * max(abs(chain.det), prod_s), det=chain.det,
                         prod_singular=prod_s))
    s = singular_values(chain.Sn)
    worst = max(float(s[k] - chain.normA * chain.normB * (chain.hk_lowers[k] + 1e-9)) for k in range(n))
    recs.append(check_le(f"{pre}:hk_self_consistent", worst, 0.0))
    return recs


def register_chain(bundle, chain: WitnessChain):
    """Merge the chain's h_k and (exact-link) c_k / d_k bounds into ``bundle``.

    The reports are re-propagated, so a bad registration surfaces as a
    :class:`~snumlab.errors.CertifiedViolation`.
    """
    reports = bundle.reports
    h = reports["hilbert"].values
    for k, lo in enumerate(chain.hk_lowers):
        if k < len(h) and lo > h[k].lower:
            h[k].lower = lo
            h[k].methods.append(f"chain:{chain.variant}")
    kind, key = ("gelfand", "c_upper") if chain.variant == "gelfand" else ("kolmogorov", "d_upper")
    vals = reports[kind].values
    for link in chain.links:
        k = link["k"] - 1
        up = link[key]
        if up is not None and k < len(vals) and (vals[k].upper is None or up < vals[k].upper):
            vals[k].upper = up
            vals[k].methods.append(f"chain:{chain.variant}")
    bundle.reports = propagate_lattice(reports, bundle.norm, bundle.rank)
    return bundle


def theorem_check(op: OperatorInstance, n: int, epsilon: float, bundle,
                  opts: SearchOptions | None = None, rng=None, chains=None) -> list:
    """Check records for the bound max(c_n, d_n) <= n (prod_{k<=n} h_k)^(1/n).

    (i) registers the chains' h_k lowers, (ii) checks the chain identities,
    (iii) falsification test on certified bounds, (iv) exact Hilbert case.
    """
    from .errors import CertifiedViolation

    recs = []
    if chains is None:
        chains = [gelfand_chain(op, n, epsilon, opts, rng), kolmogorov_chain(op, n, epsilon, opts, rng)]
    for chain in chains:
        recs.extend(chain_identity_checks(chain, op))
        try:
            register_chain(bundle, chain)
            recs.append(check_true(f"{chain.variant}:registration", True))
        except CertifiedViolation as exc:
            recs.append(check_true(f"{chain.variant}:registration", False, faults=exc.details))

    reps = bundle.reports
    hu = [v.upper for v in reps["hilbert"].values[:n]]
    lhs = max(reps["gelfand"].values[n - 1].lower, reps["kolmogorov"].values[n - 1].lower)
    if any(u is None for u in hu):
        recs.append(check_le("theorem:certified", lhs, None, n=n))
    else:
        rhs = n * math.prod(hu) ** (1.0 / n)
        recs.append(check_le("theorem:certified", lhs, rhs, rel=1e-6, n=n))
    if op.is_hilbert:
        s = singular_values(op.matrix)
        s = np.concatenate([s, np.zeros(max(0, n - len(s)))])
        rhs = n * float(np.prod(s[:n])) ** (1.0 / n)
        recs.append(check_le("theorem:hilbert_exact", float(s[n - 1]), rhs, abs_tol=1e-12, n=n))
    return recs
