import math

import numpy as np
import pytest

from snumlab.errors import InputError
from snumlab.examples import diagonal_operator, make_t_matrix
from snumlab.report import PASS
from snumlab.snumbers import profile
from snumlab.spaces import INF, OperatorInstance
from snumlab.witness import (
    chain_identity_checks,
    gelfand_chain,
    kolmogorov_chain,
    register_chain,
    theorem_check,
)


@pytest.mark.parametrize("build", [gelfand_chain, kolmogorov_chain])
def test_diagonal_chain(build):
    chain = build(diagonal_operator([3.0, 2.0, 1.0]), 3)
    assert chain.diag == pytest.approx([3.0, 2.0, 1.0])
    assert chain.det == pytest.approx(6.0)
    assert all(r.status == PASS for r in chain_identity_checks(chain, diagonal_operator([3.0, 2.0, 1.0])))


def test_kolmogorov_identity_l1_l2():
    chain = kolmogorov_chain(OperatorInstance.from_matrix(np.eye(2), 1, 2), 2)
    assert chain.diag == pytest.approx([1.0, 1.0])


def test_rank_one_truncates():
    op = OperatorInstance.from_matrix(np.outer([1.0, 2.0], [1.0, -1.0]), 1, INF)
    chain = gelfand_chain(op, 2)
    assert chain.truncated_at == 2
    assert chain.terminal_value == 0.0
    assert chain.length == 1


def test_sign_flip_leaves_abs_det_invariant():
    rng = np.random.default_rng(4)
    op = OperatorInstance.from_matrix(rng.standard_normal((4, 4)), 2, INF)
    chain = gelfand_chain(op, 3)
    B = np.vstack(chain.bs)
    B[1] *= -1
    Sn = B @ op.matrix @ np.column_stack(chain.xs)
    assert abs(np.linalg.det(Sn)) == pytest.approx(abs(chain.det), rel=1e-10)


@pytest.mark.parametrize("pair", [(1.0, INF), (2.0, INF), (1.0, 2.0)])
def test_chain_registration_is_fault_free(pair):
    rng = np.random.default_rng(8)
    op = OperatorInstance.from_matrix(rng.standard_normal((5, 5)), *pair)
    bundle = profile(op)
    for build in (gelfand_chain, kolmogorov_chain):
        chain = build(op, 4)
        assert all(r.status == PASS for r in chain_identity_checks(chain, op))
        register_chain(bundle, chain)


def test_theorem_check_t4():
    op = make_t_matrix(4, 0.5)
    recs = theorem_check(op, 4, 1e-3, profile(op))
    assert all(r.status == PASS for r in recs)
    exact = [r for r in recs if r.check_id == "theorem:hilbert_exact"][0]
    assert exact.operands["rhs"] == pytest.approx(4 * 0.5 ** 0.25)
    assert exact.operands["lhs"] == pytest.approx(0.5)


def test_chain_arguments_validated():
    op = make_t_matrix(3, 0.5)
    with pytest.raises(InputError):
        gelfand_chain(op, 0)
    with pytest.raises(InputError):
        kolmogorov_chain(op, 4)
    with pytest.raises(InputError):
        gelfand_chain(op, 2, epsilon=0.0)
    assert math.isclose(gelfand_chain(op, 1).diag[0], 1.0)
