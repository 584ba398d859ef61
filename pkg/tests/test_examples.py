import numpy as np
import pytest

from snumlab.errors import InputError
from snumlab.examples import CorpusSpec, make_corpus, make_t_matrix
from snumlab.io import corpus_text
from snumlab.linalg import numerical_rank
from snumlab.spaces import INF


def test_t3_entries():
    T = make_t_matrix(3, 0.5).matrix
    assert T.tolist() == [[0, 1, 0], [0, 0, 1], [0.5, 0, 0]]
    assert np.linalg.matrix_power(T, 3) == pytest.approx(0.5 * np.eye(3))
    assert np.linalg.norm(T, axis=0).tolist() == [0.5, 1.0, 1.0]


@pytest.mark.parametrize("sigma", [0.0, 1.0, -0.2, 1.5])
def test_t_matrix_rejects_sigma(sigma):
    with pytest.raises(InputError):
        make_t_matrix(3, sigma)


def test_t_matrix_rejects_small_n():
    with pytest.raises(InputError):
        make_t_matrix(1, 0.5)


def test_corpus_contents_and_determinism():
    c = make_corpus(CorpusSpec(seed=3, count=12))
    assert len(c) == 12
    ident = c.operators[1]
    assert ident.pair == (1.0, INF) and np.array_equal(ident.matrix, np.eye(4))
    rd = [op for op, lab in zip(c.operators, c.labels) if lab.startswith("rank-2-of-5")]
    assert rd and all(numerical_rank(op.matrix) == 2 for op in rd)
    assert corpus_text(c) == corpus_text(make_corpus(CorpusSpec(seed=3, count=12)))
    assert corpus_text(c) != corpus_text(make_corpus(CorpusSpec(seed=4, count=12)))
    for op in c:
        assert 2 <= min(op.shape)


def test_corpus_spec_validation():
    with pytest.raises(InputError):
        CorpusSpec(count=0)
    with pytest.raises(InputError):
        CorpusSpec(dims=(1, 3))
    with pytest.raises(InputError):
        CorpusSpec(count=3)  # fewer than the structured instances
