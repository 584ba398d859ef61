"""Per-kind s-number reports and the order lattice between the six kinds.

Every s-number s satisfies h_n <= s_n <= a_n; on top of that the classical
relations b_n <= min(c_n, d_n) and x_n <= c_n hold. Lower bounds travel up
these edges, upper bounds travel down, and monotonicity in n smooths both.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

from .errors import CertifiedViolation, InputError
from .opnorm import CertifiedValue, classify

KINDS = ("approximation", "bernstein", "gelfand", "kolmogorov", "weyl", "hilbert")
SYMBOL = {
    "approximation": "a",
    "bernstein": "b",
    "gelfand": "c",
    "kolmogorov": "d",
    "weyl": "x",
    "hilbert": "h",
}

# (smaller, larger)
EDGES = (
    ("hilbert", "bernstein"),
    ("hilbert", "gelfand"),
    ("hilbert", "kolmogorov"),
    ("hilbert", "weyl"),
    ("hilbert", "approximation"),
    ("bernstein", "gelfand"),
    ("bernstein", "kolmogorov"),
    ("bernstein", "approximation"),
    ("gelfand", "approximation"),
    ("kolmogorov", "approximation"),
    ("weyl", "approximation"),
    ("weyl", "gelfand"),
)

FAULT_TOL = 1e-9


@dataclass
class SNumberReport:
    kind: str
    values: list  # CertifiedValue for n = 1..nmax
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown s-number kind {self.kind!r}")

    @property
    def nmax(self) -> int:
        return len(self.values)

    def lowers(self):
        return [v.lower for v in self.values]

    def uppers(self):
        return [v.upper for v in self.values]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "values": [dict(n=i + 1, **v.to_dict()) for i, v in enumerate(self.values)],
        }


def _up(v: CertifiedValue) -> float:
    return math.inf if v.upper is None else v.upper


def _tag(v: CertifiedValue, tag: str):
    if tag not in v.methods:
        v.methods.append(tag)


def _raise_lower(v, value, tag):
    if value > v.lower:
        v.lower = value
        _tag(v, tag)
        return True
    return False


def _lower_upper(v, value, tag):
    if value < _up(v):
        v.upper = value
        _tag(v, tag)
        return True
    return False


def propagate_lattice(reports: dict, norm: CertifiedValue | None = None,
                      rank: int | None = None, tol: float = FAULT_TOL) -> dict:
    """Return propagated copies of ``reports`` (a dict kind -> SNumberReport).

    Raises :class:`CertifiedViolation` if some certified lower bound exceeds
    an applicable certified upper bound by more than ``tol`` (relative to
    max(1, upper)).
    """
    reps = {k: copy.deepcopy(r) for k, r in reports.items()}
    nmax = {r.nmax for r in reps.values()}
    if len(nmax) > 1:
        raise InputError("reports disagree on nmax")
    nmax = nmax.pop() if nmax else 0

    for _ in range(50):
        changed = False
        for kind, rep in reps.items():
            for i, v in enumerate(rep.values):
                n = i + 1
                if norm is not None:
                    if n == 1:
                        changed |= _raise_lower(v, norm.lower, "S1:norm")
                    if norm.upper is not None:
                        changed |= _lower_upper(v, norm.upper, "S1:norm")
                if rank is not None and n > rank:
                    changed |= _lower_upper(v, 0.0, "S5:rank")
        for small, large in EDGES:
            if small not in reps or large not in reps:
                continue
            tag = f"lattice:{SYMBOL[small]}<={SYMBOL[large]}"
            for vs, vl in zip(reps[small].values, reps[large].values):
                changed |= _raise_lower(vl, vs.lower, tag)
                changed |= _lower_upper(vs, _up(vl), tag)
        for rep in reps.values():
            vals = rep.values
            for i in range(1, nmax):
                changed |= _lower_upper(vals[i], _up(vals[i - 1]), "S1:monotone")
            for i in range(nmax - 2, -1, -1):
                changed |= _raise_lower(vals[i], vals[i + 1].lower, "S1:monotone")
        if not changed:
            break

    faults = []
    for kind, rep in reps.items():
        for i, v in enumerate(rep.values):
            up = _up(v)
            if v.lower > up + tol * max(1.0, abs(up)):
                faults.append({"kind": kind, "n": i + 1, "lower": v.lower, "upper": up,
                               "methods": list(v.methods)})
    if faults:
        f = faults[0]
        raise CertifiedViolation(
            f"certified violation: {f['kind']} n={f['n']} lower {f['lower']!r} > upper {f['upper']!r}",
            faults,
        )
    for rep in reps.values():
        for v in rep.values:
            if v.upper is not None and v.lower > v.upper:
                v.lower = v.upper
            if v.upper is None:
                v.status = "heuristic" if v.lower == 0 and v.estimate is not None else "lower-only"
            else:
                v.status = classify(v.lower, v.upper)
    return reps
