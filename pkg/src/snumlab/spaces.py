"""Finite sequence spaces l_p^m over the reals and operators between them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, DegenerateInputError, InputError

INF = math.inf
DEFAULT_ENUM_CAP = 20


def parse_exponent(p) -> float:
    """Normalize an exponent given as a number or the string ``"inf"``."""
    if isinstance(p, str):
        key = p.strip().lower()
        if key in ("inf", "infinity", "oo"):
            return INF
        try:
            p = float(key)
        except ValueError:
            raise InputError(f"unparseable exponent {p!r}") from None
    if isinstance(p, bool):
        raise InputError(f"invalid exponent {p!r}")
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InputError(f"invalid exponent {p!r}") from None
    if math.isnan(p) or p < 1:
        raise InputError(f"exponent must be >= 1, got {p}")
    return p


def format_exponent(p: float):
    """JSON-friendly form: ints for 1 and 2, ``"inf"`` for infinity."""
    if p == INF:
        return "inf"
    if float(p).is_integer():
        return int(p)
    return p


def dual_exponent(p) -> float:
    p = parse_exponent(p)
    if p == 1:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def embedding_constant(p, q, m: int) -> float:
    """Norm of the identity l_p^m -> l_q^m, i.e. m^max(0, 1/q - 1/p)."""
    inv_p = 0.0 if p == INF else 1.0 / p
    inv_q = 0.0 if q == INF else 1.0 / q
    return float(m) ** max(0.0, inv_q - inv_p)


@dataclass(frozen=True)
class SequenceSpace:
    """The space l_p^dim with real scalars."""

    dim: int
    exponent: float

    def __post_init__(self):
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < 1:
            raise InputError(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "exponent", parse_exponent(self.exponent))

    @property
    def heuristic_only(self) -> bool:
        """True for exponents outside {1, 2, inf}, where no exact paths exist."""
        return self.exponent not in (1.0, 2.0, INF)

    def dual(self) -> "SequenceSpace":
        return SequenceSpace(self.dim, dual_exponent(self.exponent))

    def __str__(self):
        p = "inf" if self.exponent == INF else f"{self.exponent:g}"
        return f"l_{p}^{self.dim}"


def _check_vector(space: SequenceSpace, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.shape[0] != space.dim:
        raise InputError(f"vector of shape {v.shape} does not belong to {space}")
    return v


def lp_norm(v: np.ndarray, p: float, axis=None):
    """Plain l_p norm of an array (along ``axis``); no shape checks."""
    a = np.abs(v)
    if p == 1:
        return a.sum(axis=axis)
    if p == INF:
        return a.max(axis=axis, initial=0.0)
    scale = a.max(axis=axis, keepdims=True, initial=0.0)
    safe = np.where(scale > 0, scale, 1.0)
    out = safe * ((a / safe) ** p).sum(axis=axis, keepdims=True) ** (1.0 / p)
    out = np.where(scale > 0, out, 0.0)
    return out.squeeze(axis) if axis is not None else float(out.squeeze())


def vector_norm(space: SequenceSpace, v) -> float:
    return float(lp_norm(_check_vector(space, v), space.exponent))


def dual_norm(space: SequenceSpace, b) -> float:
    """Norm of ``b`` as a functional on ``space`` (the dual exponent norm)."""
    return float(lp_norm(_check_vector(space, b), dual_exponent(space.exponent)))


def norming_functional(space: SequenceSpace, y) -> np.ndarray:
    """Return b with dual norm <= 1 and <y, b> = ||y||.

    Closed form per exponent; for p = inf the indicator sits on the first
    coordinate of maximal modulus.
    """
    y = _check_vector(space, y)
    if not np.any(y):
        raise DegenerateInputError("norming functional of the zero vector is not unique")
    p = space.exponent
    if p == 1:
        return np.sign(y)
    if p == INF:
        i = int(np.argmax(np.abs(y)))
        b = np.zeros_like(y)
        b[i] = np.sign(y[i])
        return b
    if p == 2:
        a = y / np.abs(y).max()  # rescale first so tiny or huge y cannot under/overflow
        return a / float(np.sqrt(a @ a))
    a = np.abs(y) / np.abs(y).max()
    w = a ** (p - 1.0)
    b = np.sign(y) * w / float(lp_norm(a, p)) ** (p - 1.0)
    return b


def sign_vectors(m: int) -> np.ndarray:
    """All 2^m vectors in {-1, 1}^m as rows, in lexicographic order."""
    return np.array(list(itertools.product((-1.0, 1.0), repeat=m))).reshape(-1, m)


def ball_extreme_points(space: SequenceSpace, cap: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """Extreme points of the unit ball, one per row.

    Only polyhedral balls are supported: +-e_i for p = 1 and the sign
    vectors for p = inf (limited to ``dim <= cap``).
    """
    m = space.dim
    if space.exponent == 1:
        eye = np.eye(m)
        out = np.empty((2 * m, m))
        out[0::2] = eye
        out[1::2] = -eye
        return out
    if space.exponent == INF:
        if m > cap:
            raise CapabilityError(f"2^{m} sign vectors exceed the enumeration cap 2^{cap}")
        return sign_vectors(m)
    raise CapabilityError(f"{space} has no finite set of extreme points")


@dataclass(frozen=True)
class OperatorInstance:
    """A real matrix acting from ``domain`` to ``codomain``."""

    matrix: np.ndarray
    domain: SequenceSpace
    codomain: SequenceSpace

    def __post_init__(self):
        a = np.array(self.matrix, dtype=float)
        if a.ndim != 2:
            raise InputError("operator matrix must be two-dimensional")
        if not np.all(np.isfinite(a)):
            raise InputError("operator matrix has non-finite entries")
        if a.shape != (self.codomain.dim, self.domain.dim):
            raise InputError(
                f"matrix shape {a.shape} does not map {self.domain} to {self.codomain}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @classmethod
    def from_matrix(cls, matrix, p=2, q=2) -> "OperatorInstance":
        a = np.asarray(matrix, dtype=float)
        if a.ndim != 2:
            raise InputError("operator matrix must be two-dimensional")
        return cls(a, SequenceSpace(a.shape[1], p), SequenceSpace(a.shape[0], q))

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def pair(self):
        return (self.domain.exponent, self.codomain.exponent)

    @property
    def is_hilbert(self) -> bool:
        return self.pair == (2.0, 2.0)

    def adjoint(self) -> "OperatorInstance":
        """The transpose acting between the dual spaces."""
        return OperatorInstance(self.matrix.T, self.codomain.dual(), self.domain.dual())

    def __eq__(self, other):
        if not isinstance(other, OperatorInstance):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix.tobytes()))
