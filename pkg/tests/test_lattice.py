import pytest

from snumlab.errors import CertifiedViolation, InputError
from snumlab.lattice import KINDS, SNumberReport, propagate_lattice
from snumlab.opnorm import CertifiedValue


def _reports(n=3):
    return {k: SNumberReport(k, [CertifiedValue.bounds(0.0, None, []) for _ in range(n)]) for k in KINDS}


def test_lower_bounds_travel_up_and_uppers_down():
    reps = _reports()
    reps["hilbert"].values[1] = CertifiedValue.bounds(0.4, None, ["test"])
    reps["approximation"].values[1] = CertifiedValue.bounds(0.0, 0.6, ["test"])
    out = propagate_lattice(reps)
    for k in KINDS:
        v = out[k].values[1]
        assert v.lower >= 0.4
        assert v.upper <= 0.6
        assert v.status == "certified-interval"
    # monotone smoothing: n=3 inherits the n=2 upper, n=1 the n=2 lower
    assert out["gelfand"].values[2].upper == 0.6
    assert out["gelfand"].values[0].lower == 0.4
    # the input is not mutated
    assert reps["gelfand"].values[1].upper is None


def test_norm_and_rank():
    norm = CertifiedValue.exact(2.0, "test")
    out = propagate_lattice(_reports(), norm, rank=1)
    for k in KINDS:
        assert out[k].values[0].status == "exact"
        assert out[k].values[0].lower == 2.0
        assert out[k].values[2].upper == 0.0


def test_fault_is_raised_with_operands():
    reps = _reports()
    reps["hilbert"].values[0] = CertifiedValue.bounds(1.0, None, ["corrupt"])
    reps["gelfand"].values[0] = CertifiedValue.bounds(0.0, 0.5, ["test"])
    with pytest.raises(CertifiedViolation) as exc:
        propagate_lattice(reps)
    assert exc.value.details
    f = exc.value.details[0]
    assert f["lower"] > f["upper"]


def test_edges_are_respected_only_in_the_right_direction():
    reps = _reports(1)
    # c >= x but nothing bounds d by x
    reps["weyl"].values[0] = CertifiedValue.bounds(0.7, None, [])
    out = propagate_lattice(reps)
    assert out["gelfand"].values[0].lower == 0.7
    assert out["kolmogorov"].values[0].lower == 0.0


def test_rejects_unknown_kind_and_mismatch():
    with pytest.raises(InputError):
        SNumberReport("zeta", [])
    reps = _reports(2)
    reps["gelfand"].values.pop()
    with pytest.raises(InputError):
        propagate_lattice(reps)
