"""Matrix, corpus and report files.

Floats are written with Python's shortest round-trip repr, so reading a
written file back gives bit-identical doubles. Non-finite floats inside
reports are written as the strings "inf", "-inf" and "nan".
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InputError
from .spaces import OperatorInstance, SequenceSpace, format_exponent, parse_exponent

SCHEMA_VERSION = 1


def _check_int(obj, key):
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise InputError(f"field {key!r} must be a positive integer, got {v!r}")
    return v


def matrix_from_dict(obj) -> OperatorInstance:
    if not isinstance(obj, dict):
        raise InputError("matrix file must hold a JSON object")
    rows, cols = _check_int(obj, "rows"), _check_int(obj, "cols")
    data = obj.get("data")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InputError(f"field 'data' must be a list of {rows * cols} numbers")
    for v in data:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise InputError(f"non-numeric matrix entry {v!r}")
    p = parse_exponent(obj.get("domain_p", 2))
    q = parse_exponent(obj.get("codomain_p", 2))
    M = np.array(data, dtype=float).reshape(rows, cols)
    return OperatorInstance(M, SequenceSpace(cols, p), SequenceSpace(rows, q))


def matrix_to_dict(op: OperatorInstance) -> dict:
    rows, cols = op.shape
    return {
        "rows": rows,
        "cols": cols,
        "domain_p": format_exponent(op.domain.exponent),
        "codomain_p": format_exponent(op.codomain.exponent),
        "data": [float(v) for v in op.matrix.ravel()],
    }


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def read_matrix(path) -> OperatorInstance:
    return matrix_from_dict(_load_json(path))


def dumps(obj) -> str:
    return json.dumps(sanitize(obj), indent=2, allow_nan=False) + "\n"


def write_matrix(op: OperatorInstance, path):
    Path(path).write_text(dumps(matrix_to_dict(op)))


def corpus_text(corpus) -> str:
    return dumps({
        "schema_version": SCHEMA_VERSION,
        "spec": corpus.spec.to_dict() if corpus.spec is not None else None,
        "labels": list(corpus.labels),
        "operators": [matrix_to_dict(op) for op in corpus.operators],
    })


def write_corpus(corpus, path):
    Path(path).write_text(corpus_text(corpus))


def read_corpus(path):
    from .examples import Corpus

    obj = _load_json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("operators"), list):
        raise InputError("corpus file must hold an object with an 'operators' list")
    ops = [matrix_from_dict(m) for m in obj["operators"]]
    labels = obj.get("labels") or [f"operator-{i}" for i in range(len(ops))]
    corpus = Corpus(None, ops, list(labels))
    corpus.raw_spec = obj.get("spec")
    return corpus


def sanitize(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, complex):
        return {"re": sanitize(obj.real), "im": sanitize(obj.imag)}
    return obj


def envelope(kind: str, body: dict, config: dict) -> dict:
    """Common header for every report file."""
    return {
        "schema_version": SCHEMA_VERSION,
        "toolkit_version": __version__,
        "report": kind,
        "config": config,
        **body,
    }


def profile_csv(bundle, kinds=None) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "lower", "upper", "status"])
    for kind, rep in bundle.reports.items():
        if kinds and kind not in kinds:
            continue
        for v in rep.values:
            w.writerow([kind, repr(v.lower), "" if v.upper is None else repr(v.upper), v.status])
    return buf.getvalue()


def write_report(report: dict, path=None, fmt: str = "json", bundle=None) -> str:
    """Serialize ``report`` (or, for CSV, the profile ``bundle``); write if ``path``."""
    if fmt == "json":
        text = dumps(report)
    elif fmt == "csv":
        if bundle is None:
            raise InputError("CSV output is only available for profiles")
        text = profile_csv(bundle, report.get("kinds"))
    else:
        raise InputError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text
