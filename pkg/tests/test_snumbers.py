import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snumlab.errors import InputError
from snumlab.examples import diagonal_operator, identity_embedding, make_t_matrix
from snumlab.lattice import KINDS
from snumlab.linalg import singular_values
from snumlab.snumbers import ProfileConfig, approximation_numbers, profile, rank_one_hilbert_lower
from snumlab.spaces import INF, OperatorInstance, lp_norm

from conftest import PAIRS


def test_diagonal_hilbert_profile():
    b = profile(diagonal_operator([3.0, 2.0, 1.0]))
    for k in KINDS:
        assert [v.upper for v in b.reports[k].values] == pytest.approx([3.0, 2.0, 1.0], abs=1e-12)
        assert all(v.status == "exact" for v in b.reports[k].values)


def test_t_matrix_approximation_numbers():
    rep = approximation_numbers(make_t_matrix(4, 0.5))
    assert [v.upper for v in rep.values] == pytest.approx([1, 1, 1, 0.5], abs=1e-12)


def test_identity_l1_linf_two_dims():
    # a_2 = 1/2, realized by the constant-1/2 rank-one matrix
    b = profile(identity_embedding(2))
    a2 = b.reports["approximation"].values[1]
    assert a2.status == "exact"
    assert a2.upper == pytest.approx(0.5)
    L = np.full((2, 2), 0.5)
    assert np.abs(np.eye(2) - L).max() == 0.5


def test_rank_one_hilbert_lower():
    for m in (2, 5):
        assert rank_one_hilbert_lower(identity_embedding(m)) == pytest.approx(1.0)


def test_rank_deficient_tail_is_zero():
    rng = np.random.default_rng(1)
    M = rng.standard_normal((5, 2)) @ rng.standard_normal((2, 5))
    b = profile(OperatorInstance.from_matrix(M, 1, INF))
    for k in KINDS:
        for v in b.reports[k].values[2:]:
            assert v.lower == v.upper == 0.0


def test_nmax_validation():
    with pytest.raises(InputError):
        profile(make_t_matrix(3, 0.5), nmax=0)
    with pytest.raises(InputError):
        profile(make_t_matrix(3, 0.5), nmax=7)


def test_seed_determinism():
    op = OperatorInstance.from_matrix(np.random.default_rng(5).standard_normal((4, 5)), 2, INF)
    a = profile(op, config=ProfileConfig(seed=3)).to_dict()
    b = profile(op, config=ProfileConfig(seed=3)).to_dict()
    assert a == b


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(PAIRS), st.integers(2, 4), st.integers(2, 4))
def test_profile_invariants(seed, pair, rows, cols):
    rng = np.random.default_rng(seed)
    op = OperatorInstance.from_matrix(rng.standard_normal((rows, cols)), *pair)
    b = profile(op)
    for k in KINDS:
        vals = b.reports[k].values
        for i, v in enumerate(vals):
            assert v.upper is not None
            assert 0.0 <= v.lower <= v.upper
            if i:
                assert v.upper <= vals[i - 1].upper
                assert v.lower <= vals[i - 1].lower
    # every kind shares s_1 = ||S||
    assert b.reports["hilbert"].values[0].lower == pytest.approx(b.norm.lower)
    # a_n never falls below the l2 bridge lower sigma_n / (c(p,2) c(2,q))
    p, q = pair
    from snumlab.spaces import embedding_constant

    s = singular_values(op.matrix)
    for n, v in enumerate(b.reports["approximation"].values, 1):
        bridge = s[n - 1] / (embedding_constant(2, p, cols) * embedding_constant(q, 2, rows))
        assert v.upper >= bridge * (1 - 1e-9)


def test_bernstein_mesh_lower_is_sound():
    rng = np.random.default_rng(11)
    op = OperatorInstance.from_matrix(rng.standard_normal((4, 4)), 1, INF)
    b = profile(op)
    assert b.reports["bernstein"].values[1].lower <= b.reports["approximation"].values[1].upper
    # on the whole space b_4 is the infimum of the ratio, so every sample bounds it from above
    x = rng.standard_normal((2000, 4))
    ratios = lp_norm(x @ op.matrix.T, INF, axis=1) / lp_norm(x, 1, axis=1)
    assert b.reports["bernstein"].values[3].lower <= ratios.min()


def test_zero_matrix_profile():
    b = profile(OperatorInstance.from_matrix(np.zeros((3, 3)), 1, INF))
    for k in KINDS:
        assert all(v.lower == v.upper == 0.0 for v in b.reports[k].values)
