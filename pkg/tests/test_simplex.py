import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snumlab.simplex import solve_lp


def test_textbook_problem():
    # max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    c = np.array([-3.0, -5.0, 0, 0, 0])
    A = np.array([[1.0, 0, 1, 0, 0], [0, 2, 0, 1, 0], [3, 2, 0, 0, 1]])
    b = np.array([4.0, 12, 18])
    res = solve_lp(c, A, b)
    assert res.status == "optimal"
    assert res.fun == pytest.approx(-36.0)
    assert res.x[:2] == pytest.approx([2.0, 6.0])
    assert b @ res.duals == pytest.approx(res.fun)


def test_infeasible_and_unbounded():
    assert solve_lp(np.ones(2), np.array([[1.0, 1.0]]), np.array([-1.0])).status == "infeasible"
    assert solve_lp(np.array([-1.0, 0.0]), np.array([[1.0, -1.0]]), np.array([0.0])).status == "unbounded"


def test_degenerate_redundant_rows():
    A = np.array([[1.0, 1.0, 1.0], [2.0, 2.0, 2.0]])
    res = solve_lp(np.array([1.0, 2.0, 3.0]), A, np.array([1.0, 2.0]))
    assert res.status == "optimal"
    assert res.fun == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.integers(2, 7))
def test_strong_duality_random(seed, m, extra):
    rng = np.random.default_rng(seed)
    n = m + extra
    A = rng.standard_normal((m, n))
    x0 = rng.random(n)
    b = A @ x0
    c = rng.random(n) + 0.1  # bounded below on x >= 0
    res = solve_lp(c, A, b)
    assert res.status == "optimal"
    assert np.all(res.x >= -1e-12)
    assert A @ res.x == pytest.approx(b, abs=1e-8)
    assert np.all(A.T @ res.duals <= c + 1e-8)
    assert b @ res.duals == pytest.approx(res.fun, abs=1e-8)
    assert res.fun <= c @ x0 + 1e-9
