import numpy as np
import pytest

from snumlab.spaces import INF, OperatorInstance

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_op(rng, rows, cols, p, q):
    return OperatorInstance.from_matrix(rng.standard_normal((rows, cols)), p, q)


PAIRS = [(1.0, INF), (2.0, INF), (1.0, 2.0), (2.0, 2.0)]
