"""Deterministic benchmark operators and seeded Gaussian corpora."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InputError
from .spaces import INF, OperatorInstance, format_exponent, parse_exponent

PRNG = "numpy.random.PCG64"

DEFAULT_PAIRS = ((2.0, 2.0), (1.0, INF), (2.0, INF), (1.0, 2.0))


def make_t_matrix(n: int, sigma: float) -> OperatorInstance:
    """Cyclic shift with ``sigma`` in the bottom-left corner, on l_2^n.

    Its singular values are (1, ..., 1, sigma) and T^n = sigma * I, so every
    eigenvalue has modulus sigma^(1/n).
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InputError(f"n must be an integer >= 2, got {n!r}")
    sigma = float(sigma)
    if not 0.0 < sigma < 1.0:
        raise InputError(f"sigma must lie in (0, 1), got {sigma!r}")
    T = np.eye(n, k=1)
    T[n - 1, 0] = sigma
    return OperatorInstance.from_matrix(T, 2, 2)


def identity_embedding(m: int, p=1, q=INF) -> OperatorInstance:
    return OperatorInstance.from_matrix(np.eye(m), p, q)


def diagonal_operator(values, p=2, q=2) -> OperatorInstance:
    return OperatorInstance.from_matrix(np.diag(np.asarray(values, dtype=float)), p, q)


def rank_deficient(rng, rows: int, cols: int, rank: int, p=2, q=2) -> OperatorInstance:
    """Product of Gaussian factors with inner dimension ``rank``."""
    M = rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols))
    return OperatorInstance.from_matrix(M, p, q)


@dataclass
class CorpusSpec:
    """Recipe for a reproducible corpus.

    ``count`` is the total number of operators. The structured families
    (identities as (m, p, q), diagonal decays as (m, rate), rank-deficient as
    (m, rank, p, q)) come first; Gaussian instances fill the remainder and
    cycle through ``pairs``.
    """

    seed: int = 0
    count: int = 100
    dims: tuple = (4, 8)
    pairs: tuple = DEFAULT_PAIRS
    distribution: str = "gaussian"
    identities: tuple = ((5, 2.0, 2.0), (4, 1.0, INF))
    diagonals: tuple = ((5, 0.5),)
    rank_deficient: tuple = ((5, 2, 2.0, 2.0), (5, 2, 1.0, INF))

    def __post_init__(self):
        if self.count < 1:
            raise InputError("corpus count must be >= 1")
        lo, hi = self.dims
        if lo < 2 or hi < lo:
            raise InputError(f"invalid dimension range {self.dims!r}")
        if self.distribution != "gaussian":
            raise InputError(f"unsupported distribution {self.distribution!r}")
        self.pairs = tuple((parse_exponent(p), parse_exponent(q)) for p, q in self.pairs)
        if self.count < self.structured_count:
            raise InputError("count is smaller than the number of structured instances")

    @property
    def structured_count(self) -> int:
        return len(self.identities) + len(self.diagonals) + len(self.rank_deficient)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pairs"] = [[format_exponent(p), format_exponent(q)] for p, q in self.pairs]
        d["identities"] = [[m, format_exponent(p), format_exponent(q)] for m, p, q in self.identities]
        d["rank_deficient"] = [[m, r, format_exponent(p), format_exponent(q)]
                               for m, r, p, q in self.rank_deficient]
        d["diagonals"] = [list(x) for x in self.diagonals]
        d["dims"] = list(self.dims)
        d["prng"] = PRNG
        return d


@dataclass
class Corpus:
    spec: CorpusSpec
    operators: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)


def make_corpus(spec: CorpusSpec | None = None) -> Corpus:
    spec = spec or CorpusSpec()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    ops, labels = [], []
    for m, p, q in spec.identities:
        ops.append(identity_embedding(m, p, q))
        labels.append(f"identity-{m}-{format_exponent(p)}-{format_exponent(q)}")
    for m, rate in spec.diagonals:
        ops.append(diagonal_operator(np.arange(1, m + 1, dtype=float) ** -rate))
        labels.append(f"diagonal-{m}-{rate}")
    for m, r, p, q in spec.rank_deficient:
        ops.append(rank_deficient(rng, m, m, r, p, q))
        labels.append(f"rank-{r}-of-{m}-{format_exponent(p)}-{format_exponent(q)}")
    lo, hi = spec.dims
    for i in range(spec.count - spec.structured_count):
        p, q = spec.pairs[i % len(spec.pairs)]
        rows, cols = (int(d) for d in rng.integers(lo, hi + 1, size=2))
        ops.append(OperatorInstance.from_matrix(rng.standard_normal((rows, cols)), p, q))
        labels.append(f"gaussian-{i}")
    return Corpus(spec, ops, labels)


def gaussian_square(seed: int, count: int, dim: int, p=2, q=2) -> list:
    rng = np.random.Generator(np.random.PCG64(seed))
    return [OperatorInstance.from_matrix(rng.standard_normal((dim, dim)), p, q) for _ in range(count)]
