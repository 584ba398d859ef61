"""Falsification suites over certified bounds.

A check fails only when a certified lower bound of the left-hand side
exceeds a certified upper bound of the right-hand side (up to a relative
tolerance). Uncertified operands give ``skipped-uncertified`` records.

Every suite takes an optional ``corrupt`` hook used by the negative-control
tests: it receives each computed profile (or, for the T_n suite, each
matrix) and may tamper with it before the checks run.
"""

from __future__ import annotations

import copy
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import CertifiedViolation, InputError
from .examples import CorpusSpec, gaussian_square, make_corpus, make_t_matrix
from .lattice import KINDS, SYMBOL, propagate_lattice
from .linalg import eigenvalues, singular_values
from .report import SKIPPED, CheckRecord, VerificationReport, check_close, check_le, check_true
from .snumbers import ProfileConfig, profile
from .spaces import OperatorInstance, format_exponent
from .witness import gelfand_chain, kolmogorov_chain, theorem_check

SUITES = ("axioms", "prop1", "theorem", "corollary", "classical", "tn")
ALPHAS = (0.5, 1.0, 2.0)
TN_RANGE = tuple(range(2, 9))
TN_SIGMAS = (0.1, 0.5, 0.9)
HILBERT_TOL = 1e-6
LATTICE_TOL = 1e-9


def _one_profile(args):
    op, cfg = args
    return profile(op, None, cfg)


def compute_profiles(ops, config: ProfileConfig | None = None, threads: int | None = None):
    """Profiles for ``ops`` in corpus order; optionally spread over processes."""
    cfg = config or ProfileConfig()
    threads = threads or 1
    work = [(op, cfg) for op in ops]
    if threads > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_one_profile, work, chunksize=4))
    return [_one_profile(w) for w in work]


def _prepare(corpus, config, profiles, corrupt, threads):
    ops = list(corpus)
    if profiles is None:
        profiles = compute_profiles(ops, config, threads)
    elif corrupt is not None:
        profiles = copy.deepcopy(profiles)
    if corrupt is not None:
        for b in profiles:
            corrupt(b)
    return ops, profiles


def _descriptor(corpus) -> dict:
    spec = getattr(corpus, "spec", None)
    out = {"size": len(corpus)}
    if spec is not None:
        out["spec"] = spec.to_dict()
    elif getattr(corpus, "raw_spec", None) is not None:
        out["spec"] = corpus.raw_spec
    out["pairs"] = sorted({(format_exponent(op.domain.exponent), format_exponent(op.codomain.exponent))
                           for op in corpus}, key=str)
    return out


def _new_report(name, corpus, config):
    return VerificationReport(name, corpus=_descriptor(corpus) if corpus is not None else {},
                              config=(config or ProfileConfig()).to_dict())


def _val(bundle, kind, n):
    return bundle.reports[kind].values[n - 1]


# -- axioms -------------------------------------------------------------------


def _hilbert_indices(ops):
    return [i for i, op in enumerate(ops) if op.is_hilbert]


def axiom_suite(corpus, config: ProfileConfig | None = None, profiles=None, corrupt=None,
                threads=None) -> VerificationReport:
    cfg = config or ProfileConfig()
    rep = _new_report("axioms", corpus, cfg)
    ops, profiles = _prepare(corpus, cfg, profiles, corrupt, threads)
    for i, (op, b) in enumerate(zip(ops, profiles)):
        tag = f"op{i}"
        for kind in KINDS:
            vals = b.reports[kind].values
            # S1: monotone sequences with s_1 = ||S||
            for n in range(2, len(vals) + 1):
                rep.add(check_le(f"S1:monotone:{tag}:{SYMBOL[kind]}{n}", vals[n - 1].lower,
                                 vals[n - 2].upper, abs_tol=LATTICE_TOL))
            rep.add(check_le(f"S1:first:{tag}:{SYMBOL[kind]}", b.norm.lower, vals[0].upper,
                             rel=LATTICE_TOL))
            rep.add(check_le(f"S1:first-upper:{tag}:{SYMBOL[kind]}", vals[0].lower, b.norm.upper,
                             rel=LATTICE_TOL))
            # S5: exact zeros beyond the rank
            for n in range(b.rank + 1, len(vals) + 1):
                v = vals[n - 1]
                rep.add(check_true(f"S5:zero:{tag}:{SYMBOL[kind]}{n}", v.lower == 0.0 and v.upper == 0.0,
                                   lower=v.lower, upper=v.upper, rank=b.rank))
        # S4: identity on l_2^m
        if op.is_hilbert and op.shape[0] == op.shape[1] and np.array_equal(op.matrix, np.eye(op.shape[0])):
            for kind in KINDS:
                for n, v in enumerate(b.reports[kind].values, 1):
                    for side, x in (("lower", v.lower), ("upper", v.upper)):
                        rep.add(check_close(f"S4:identity:{tag}:{SYMBOL[kind]}{n}:{side}",
                                            math.nan if x is None else x, 1.0, 1e-9))

    # S2, S3 and the product rule on Hilbert instances (all kinds equal singular values there)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    hil = _hilbert_indices(ops)
    for i in hil:
        S = ops[i].matrix
        mY, mX = S.shape
        T = rng.standard_normal((mY, mX))
        R = rng.standard_normal((mY, mY))
        W = rng.standard_normal((mX, mX))
        sS = _hilbert_values(profiles[i], ops[i])
        sT = singular_values(T)
        sSum = singular_values(S + T)
        sRST = singular_values(R @ S @ W)
        nR, nW = singular_values(R)[0], singular_values(W)[0]
        k = len(sS)
        for m in range(1, k + 1):
            for n in range(1, k + 2 - m):
                rep.add(check_le(f"S2:{'op%d' % i}:m{m}n{n}", float(sSum[m + n - 2]),
                                 float(sS[m - 1] + sT[n - 1]), rel=1e-9, abs_tol=1e-9))
            rep.add(check_le(f"S3:{'op%d' % i}:n{m}", float(sRST[m - 1]), float(nR * sS[m - 1] * nW),
                             rel=1e-9, abs_tol=1e-9))
        if mY == mX:
            P = rng.standard_normal((mX, mX))
            sProd = singular_values(S @ P)
            sP = singular_values(P)
            for m in range(1, k + 1):
                for n in range(1, k + 2 - m):
                    rep.add(check_le(f"product:{'op%d' % i}:m{m}n{n}", float(sProd[m + n - 2]),
                                     float(sS[m - 1] * sP[n - 1]), rel=1e-9, abs_tol=1e-9))
    return rep


def _hilbert_values(bundle, op):
    """The (exact) values reported for a Hilbert-space operator, padded with zeros."""
    vals = np.array([v.upper for v in bundle.reports["approximation"].values], dtype=float)
    k = min(op.shape)
    return np.concatenate([vals, np.zeros(max(0, k - len(vals)))])[:k]


# -- h_n <= s_n <= a_n ----------------------------------------------------------


def prop1_suite(corpus, config: ProfileConfig | None = None, profiles=None, corrupt=None,
                threads=None) -> VerificationReport:
    cfg = config or ProfileConfig()
    rep = _new_report("prop1", corpus, cfg)
    ops, profiles = _prepare(corpus, cfg, profiles, corrupt, threads)
    for i, (op, b) in enumerate(zip(ops, profiles)):
        tag = f"op{i}"
        try:
            propagate_lattice(b.reports, b.norm, b.rank)
            rep.add(check_true(f"lattice:{tag}", True))
        except CertifiedViolation as exc:
            rep.add(check_true(f"lattice:{tag}", False, faults=exc.details))
        for n in range(1, b.nmax + 1):
            h = _val(b, "hilbert", n)
            a = _val(b, "approximation", n)
            for kind in KINDS:
                if kind == "hilbert":
                    continue
                v = _val(b, kind, n)
                rep.add(check_le(f"h<=s:{tag}:{SYMBOL[kind]}{n}", h.lower, v.upper, rel=LATTICE_TOL,
                                 abs_tol=LATTICE_TOL))
                if kind != "approximation":
                    rep.add(check_le(f"s<=a:{tag}:{SYMBOL[kind]}{n}", v.lower, a.upper,
                                     rel=LATTICE_TOL, abs_tol=LATTICE_TOL))
        if op.is_hilbert:
            s = singular_values(op.matrix)
            for kind in KINDS:
                for n, v in enumerate(b.reports[kind].values, 1):
                    target = float(s[n - 1]) if n <= len(s) else 0.0
                    for side, x in (("lower", v.lower), ("upper", v.upper)):
                        rep.add(check_close(f"hilbert-equality:{tag}:{SYMBOL[kind]}{n}:{side}",
                                            math.nan if x is None else x, target, HILBERT_TOL))
    return rep


# -- max(c_n, d_n) <= n (prod h_k)^(1/n) ---------------------------------------------


def theorem_suite(corpus, config: ProfileConfig | None = None, profiles=None, corrupt=None,
                  threads=None) -> VerificationReport:
    cfg = config or ProfileConfig()
    rep = _new_report("theorem", corpus, cfg)
    ops, profiles = _prepare(corpus, cfg, profiles, corrupt, threads)
    for i, (op, b) in enumerate(zip(ops, profiles)):
        b = copy.deepcopy(b)
        N = b.nmax
        chains = list(b.chains.values()) if b.chains else None
        if chains is None:
            n = min(N, max(b.rank, 1))
            chains = [gelfand_chain(op, n, cfg.epsilon, cfg.options()),
                      kolmogorov_chain(op, n, cfg.epsilon, cfg.options())]
        records = theorem_check(op, N, cfg.epsilon, b, cfg.options(), chains=chains)
        for n in range(1, N):
            records.extend(r for r in theorem_check(op, n, cfg.epsilon, b, cfg.options(), chains=[])
                           if r.check_id.startswith("theorem:"))
        for r in records:
            r.check_id = f"{r.check_id}:op{i}"
            rep.add(r)
    return rep


# -- corollary -----------------------------------------------------------------------


def lemma_margin(n: int, alpha: float) -> float:
    """e^a (n!)^(a/n) - n^a, computed in log space and scaled back."""
    lhs = alpha * math.log(n)
    rhs = alpha + alpha * math.lgamma(n + 1) / n
    return math.exp(rhs) - math.exp(lhs)


def corollary_suite(corpus, config: ProfileConfig | None = None, alphas=ALPHAS, profiles=None,
                    corrupt=None, threads=None, lemma_nmax: int = 50) -> VerificationReport:
    cfg = config or ProfileConfig()
    rep = _new_report("corollary", corpus, cfg)
    for alpha in alphas:
        for n in range(1, lemma_nmax + 1):
            m = lemma_margin(n, alpha)
            rep.add(CheckRecord(f"lemma:alpha{alpha}:n{n}", "pass" if m > 0 else "fail",
                                {"lhs": n ** alpha, "rhs": n ** alpha + m}, m))
    ops, profiles = _prepare(corpus, cfg, profiles, corrupt, threads)
    for i, b in enumerate(profiles):
        hu = [v.upper for v in b.reports["hilbert"].values]
        for alpha in alphas:
            for n in range(1, b.nmax + 1):
                if any(u is None for u in hu[:n]):
                    sup = None
                else:
                    sup = max(k ** alpha * hu[k - 1] for k in range(1, n + 1))
                c_rhs = None if sup is None else math.e ** alpha * n ** (1 - alpha) * sup
                a_rhs = None if sup is None else 2 * math.e ** alpha * n ** (1.5 - alpha) * sup
                rep.add(check_le(f"corollary-c:op{i}:alpha{alpha}:n{n}", _val(b, "gelfand", n).lower,
                                 c_rhs, rel=1e-9))
                rep.add(check_le(f"corollary-a:op{i}:alpha{alpha}:n{n}",
                                 _val(b, "approximation", n).lower, a_rhs, rel=1e-9))
    return rep


# -- classical inequalities -------------------------------------------------------


def weyl_records(S: np.ndarray, tag: str, tol: float = 1e-8, equality: bool = False) -> list:
    """Weyl's product inequality and its single-eigenvalue corollary for one matrix."""
    lam = np.abs(eigenvalues(S))
    s = singular_values(S)
    recs = []
    for n in range(1, len(s) + 1):
        lhs, rhs = float(np.prod(lam[:n])), float(np.prod(s[:n]))
        recs.append(check_le(f"weyl-product:{tag}:n{n}", lhs, rhs, rel=tol, abs_tol=tol * 1e-3))
        bound = float(s[0]) ** (1 - 1 / n) * float(s[n - 1]) ** (1 / n)
        recs.append(check_le(f"weyl-eigenvalue:{tag}:n{n}", float(lam[n - 1]), bound, rel=tol,
                             abs_tol=tol * 1e-3))
    if equality:
        n = len(s)
        recs.append(check_close(f"weyl-equality:{tag}", float(np.prod(lam)), float(np.prod(s)), tol))
    return recs


def classical_suite(corpus, config: ProfileConfig | None = None, profiles=None, corrupt=None,
                    threads=None, weyl_count: int = 100, weyl_dim: int = 6) -> VerificationReport:
    cfg = config or ProfileConfig()
    rep = _new_report("classical", corpus, cfg)
    ops, profiles = _prepare(corpus, cfg, profiles, corrupt, threads)
    for i, (op, b) in enumerate(zip(ops, profiles)):
        for n in range(1, b.nmax + 1):
            a, c = _val(b, "approximation", n), _val(b, "gelfand", n)
            rep.add(check_le(f"a<=(1+sqrt n)c:op{i}:n{n}", a.lower,
                             None if c.upper is None else (1 + math.sqrt(n)) * c.upper, rel=1e-9))
            d, bb = _val(b, "kolmogorov", n), _val(b, "bernstein", n)
            rhs = None if bb.upper is None else n * n * bb.upper
            if op.is_hilbert:
                rep.add(check_le(f"d<=n^2 b:op{i}:n{n}", d.lower, rhs, rel=1e-9, abs_tol=1e-12))
            else:
                r = check_le(f"d<=n^2 b:op{i}:n{n}", d.lower, rhs, rel=1e-9, abs_tol=1e-12,
                             note="report-only")
                r.status = SKIPPED
                rep.add(r)
    mats = gaussian_square(cfg.seed, weyl_count, weyl_dim)
    for j, op in enumerate(mats):
        rep.extend(weyl_records(op.matrix, f"gaussian{j}"))
    rep.extend(weyl_records(make_t_matrix(4, 0.5).matrix, "T4", equality=True))
    return rep


# -- T_n ------------------------------------------------------------------------


def tn_suite(n_range=TN_RANGE, sigmas=TN_SIGMAS, config: ProfileConfig | None = None,
             corrupt=None) -> VerificationReport:
    cfg = config or ProfileConfig()
    rep = VerificationReport("tn", corpus={"n_range": list(n_range), "sigmas": list(sigmas)},
                             config=cfg.to_dict())
    for n in n_range:
        for sigma in sigmas:
            tag = f"n{n}:sigma{sigma}"
            T = make_t_matrix(n, sigma).matrix
            if corrupt is not None:
                T = corrupt(T.copy())
            s = singular_values(T)
            target = np.ones(n)
            target[-1] = sigma
            for k in range(n):
                rep.add(check_close(f"tn-singular:{tag}:k{k + 1}", float(s[k]), float(target[k]), 1e-9))
            lam = np.abs(eigenvalues(T))
            for k in range(n):
                rep.add(check_close(f"tn-eigen-modulus:{tag}:k{k + 1}", float(lam[k]), sigma ** (1 / n), 1e-7))
            dev = float(np.max(np.abs(np.linalg.matrix_power(T, n) - sigma * np.eye(n))))
            rep.add(check_le(f"tn-power:{tag}", dev, 0.0, abs_tol=1e-10))
            rep.add(check_close(f"tn-weyl-equality:{tag}", float(np.prod(lam)), float(np.prod(s)), 1e-9))
            b = profile(OperatorInstance.from_matrix(T), None, cfg)
            for k, v in enumerate(b.reports["approximation"].values):
                rep.add(check_close(f"tn-approximation:{tag}:k{k + 1}", v.upper, float(target[k]), 1e-9))
    return rep


# -- orchestration ----------------------------------------------------------------


def default_threads() -> int:
    raw = os.environ.get("SNUMLAB_THREADS")
    if raw is None:
        return 1
    try:
        t = int(raw)
    except ValueError as exc:
        raise InputError(f"SNUMLAB_THREADS must be an integer, got {raw!r}") from exc
    if t < 1:
        raise InputError("SNUMLAB_THREADS must be >= 1")
    return t


def run_suites(names, corpus=None, config: ProfileConfig | None = None, threads=None,
               tn_nmax: int = 8, alphas=ALPHAS) -> list:
    """Run the named suites sharing one set of profiles; reports in request order."""
    cfg = config or ProfileConfig()
    if "all" in names:
        names = SUITES
    for name in names:
        if name not in SUITES:
            raise InputError(f"unknown suite {name!r}")
    needs_corpus = [n for n in names if n != "tn"]
    profiles = None
    if needs_corpus:
        if corpus is None:
            corpus = make_corpus(CorpusSpec(seed=cfg.seed))
        profiles = compute_profiles(list(corpus), cfg, threads)
    out = []
    for name in names:
        if name == "tn":
            out.append(tn_suite(range(2, tn_nmax + 1), TN_SIGMAS, cfg))
        elif name == "axioms":
            out.append(axiom_suite(corpus, cfg, profiles))
        elif name == "prop1":
            out.append(prop1_suite(corpus, cfg, profiles))
        elif name == "theorem":
            out.append(theorem_suite(corpus, cfg, profiles))
        elif name == "corollary":
            out.append(corollary_suite(corpus, cfg, alphas, profiles))
        elif name == "classical":
            out.append(classical_suite(corpus, cfg, profiles))
    return out
