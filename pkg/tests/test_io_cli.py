import csv
import io
import json

import numpy as np
import pytest

from snumlab.cli import main
from snumlab.errors import InputError
from snumlab.examples import CorpusSpec, make_corpus
from snumlab.io import matrix_from_dict, read_corpus, read_matrix, write_corpus, write_matrix
from snumlab.spaces import INF, OperatorInstance


def test_matrix_format_example():
    op = matrix_from_dict({"rows": 2, "cols": 2, "data": [1, 0, 0, 1], "domain_p": 1, "codomain_p": "inf"})
    assert op.pair == (1.0, INF)
    assert np.array_equal(op.matrix, np.eye(2))


@pytest.mark.parametrize("bad", [
    [1, 2],
    {"rows": 2, "cols": 2, "data": [1, 2, 3]},
    {"rows": 0, "cols": 2, "data": []},
    {"rows": 1, "cols": 1, "data": ["x"]},
    {"rows": 1, "cols": 1, "data": [1], "domain_p": 0.3},
    {"rows": 1.5, "cols": 1, "data": [1]},
])
def test_matrix_schema_errors(bad):
    with pytest.raises(InputError):
        matrix_from_dict(bad)


def test_bit_exact_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    M = rng.standard_normal((3, 4)) * 10.0 ** rng.integers(-300, 300, size=(3, 4))
    op = OperatorInstance.from_matrix(M, 1, INF)
    path = tmp_path / "m.json"
    write_matrix(op, path)
    back = read_matrix(path)
    assert back.matrix.tobytes() == op.matrix.tobytes()
    assert back.pair == op.pair


def test_corpus_file_round_trip(tmp_path):
    c = make_corpus(CorpusSpec(seed=1, count=10))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_corpus(c, a)
    write_corpus(read_corpus(a), b)
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["operators"] == rb["operators"]
    for x, y in zip(c.operators, read_corpus(b).operators):
        assert x.matrix.tobytes() == y.matrix.tobytes()


def test_cli_example_then_compute(tmp_path, capsys):
    t4 = tmp_path / "t4.json"
    assert main(["example", "tn", "--n", "4", "--sigma", "0.5", "-o", str(t4)]) == 0
    out = tmp_path / "p.json"
    assert main(["compute", str(t4), "--kind", "approximation", "-o", str(out)]) == 0
    rep = json.loads(out.read_text())
    vals = rep["reports"]["approximation"]["values"]
    assert [v["upper"] for v in vals] == pytest.approx([1, 1, 1, 0.5])
    assert list(rep["reports"]) == ["approximation"]
    assert rep["schema_version"] == 1 and rep["toolkit_version"]
    assert rep["config"]["restarts"] == 64 and rep["config"]["epsilon"] == 1e-3
    assert all(v["methods"] for v in vals)


def test_cli_csv(tmp_path, capsys):
    t = tmp_path / "t.json"
    main(["example", "tn", "--n", "3", "--sigma", "0.2", "-o", str(t)])
    capsys.readouterr()
    assert main(["compute", str(t), "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["kind", "lower", "upper", "status"]
    assert len(rows) == 1 + 6 * 3
    assert rows[3][1:] == ["0.2", "0.2", "exact"]


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2, "cols": 2, "data": [1, 2]}')
    assert main(["compute", str(bad)]) == 2
    bad.write_text("not json")
    assert main(["compute", str(bad)]) == 2
    assert main(["compute", str(tmp_path / "missing.json")]) == 2
    assert main(["verify", "--suite", "nonsense"]) == 2
    assert main(["example", "tn", "--n", "3", "--sigma", "1.0"]) == 2
    assert main(["verify", "--suite", "tn", "--nmax", "8"]) == 0


def test_cli_witness(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"rows": 3, "cols": 3, "data": [3, 0, 0, 0, 2, 0, 0, 0, 1],
                             "domain_p": 1, "codomain_p": "inf"}))
    assert main(["witness", str(m), "--variant", "kolmogorov", "--n", "3"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["chain"]["variant"] == "kolmogorov"
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_env_seed_override(tmp_path, monkeypatch, capsys):
    t = tmp_path / "t.json"
    main(["example", "tn", "--n", "3", "--sigma", "0.2", "-o", str(t)])
    monkeypatch.setenv("SNUMLAB_SEED", "42")
    main(["compute", str(t)])
    assert json.loads(capsys.readouterr().out)["config"]["seed"] == 42
    monkeypatch.setenv("SNUMLAB_SEED", "x")
    assert main(["compute", str(t)]) == 2
