import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snumlab.opnorm import CertifiedValue, operator_norm, quotient_norm, restricted_norm
from snumlab.spaces import INF, OperatorInstance, lp_norm

from conftest import PAIRS

ALL_PAIRS = PAIRS + [(INF, 1.0), (2.0, 1.0), (INF, 2.0), (1.0, 1.0), (3.0, INF), (2.0, 3.0)]


def _ball_samples(rng, m, p, count=400):
    x = rng.standard_normal((count, m))
    if p == 1:
        x = np.vstack([x, np.eye(m), -np.eye(m)])
    return x / lp_norm(x, p, axis=1)[:, None]


def test_oracle_linf_to_l1():
    op = OperatorInstance.from_matrix([[1.0, 1.0], [1.0, -1.0]], INF, 1)
    v = operator_norm(op)
    assert v.status == "exact"
    assert v.lower == pytest.approx(2.0)


def test_l1_to_linf_is_max_entry():
    M = np.array([[0.5, -3.0], [2.0, 1.0]])
    assert operator_norm(OperatorInstance.from_matrix(M, 1, INF)).upper == 3.0


def test_identity_l2_to_l1():
    v = operator_norm(OperatorInstance.from_matrix(np.eye(4), 2, 1))
    assert v.status == "exact"
    assert v.upper == pytest.approx(2.0)


def test_certified_value_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        CertifiedValue(2.0, 1.0, "exact")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(ALL_PAIRS), st.integers(2, 5), st.integers(2, 5))
def test_operator_norm_brackets_samples(seed, pair, rows, cols):
    rng = np.random.default_rng(seed)
    op = OperatorInstance.from_matrix(rng.standard_normal((rows, cols)), *pair)
    v = operator_norm(op, rng=np.random.default_rng(0))
    sampled = lp_norm(_ball_samples(rng, cols, pair[0]) @ op.matrix.T, pair[1], axis=1).max()
    assert sampled <= v.upper * (1 + 1e-9)
    assert v.lower <= v.upper + 1e-12
    if v.point is not None:
        x = v.point
        assert float(lp_norm(x, pair[0])) <= 1 + 1e-9
        assert float(lp_norm(op.matrix @ x, pair[1])) >= v.lower * (1 - 1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(ALL_PAIRS), st.integers(2, 5), st.integers(3, 5))
def test_restricted_norm_brackets_samples(seed, pair, rows, cols):
    rng = np.random.default_rng(seed)
    op = OperatorInstance.from_matrix(rng.standard_normal((rows, cols)), *pair)
    F = rng.standard_normal((1, cols))
    v = restricted_norm(op, annihilator=F, rng=np.random.default_rng(0))
    # samples inside ker F: project random vectors then normalize
    B = np.linalg.svd(F)[2][1:].T
    x = rng.standard_normal((400, B.shape[1])) @ B.T
    x /= lp_norm(x, pair[0], axis=1)[:, None]
    sampled = lp_norm(x @ op.matrix.T, pair[1], axis=1).max()
    assert sampled <= v.upper * (1 + 1e-9)
    if v.point is not None:
        assert abs(float((F @ v.point)[0])) <= 1e-8
        assert float(lp_norm(op.matrix @ v.point, pair[1])) >= v.lower * (1 - 1e-8) - 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(PAIRS), st.integers(3, 5), st.integers(2, 5))
def test_quotient_norm_upper_dominates_samples(seed, pair, rows, cols):
    from snumlab.linalg import distance_to_subspace

    rng = np.random.default_rng(seed)
    op = OperatorInstance.from_matrix(rng.standard_normal((rows, cols)), *pair)
    N = rng.standard_normal((rows, 1))
    v = quotient_norm(op, N, rng=np.random.default_rng(0))
    Y = op.codomain
    for x in _ball_samples(rng, cols, pair[0], 60):
        assert distance_to_subspace(op.matrix @ x, N, Y).lower <= v.upper * (1 + 1e-9) + 1e-12


def test_hilbert_restricted_and_quotient_match_singular_values():
    rng = np.random.default_rng(3)
    M = rng.standard_normal((5, 5))
    U, s, Vt = np.linalg.svd(M)
    op = OperatorInstance.from_matrix(M)
    r = restricted_norm(op, annihilator=Vt[:2])
    q = quotient_norm(op, U[:, :2])
    assert r.status == q.status == "exact"
    assert r.upper == pytest.approx(s[2], rel=1e-12)
    assert q.upper == pytest.approx(s[2], rel=1e-12)


def test_subspace_killed_by_operator():
    op = OperatorInstance.from_matrix(np.diag([1.0, 0.0]), 1, INF)
    v = restricted_norm(op, np.array([[0.0], [1.0]]))
    assert v.upper == 0.0 and v.status == "exact"
    assert math.isclose(quotient_norm(op, np.array([[1.0], [0.0]])).upper, 0.0, abs_tol=1e-15)
