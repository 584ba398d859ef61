"""Command-line front end.

Exit codes: 0 success, 1 certified violation, 2 usage or input error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import CapabilityError, CertifiedViolation, InputError, NumericalFailure
from .examples import CorpusSpec, make_corpus, make_t_matrix
from .io import (
    corpus_text,
    dumps,
    envelope,
    matrix_from_dict,
    matrix_to_dict,
    profile_csv,
    read_corpus,
)
from .lattice import KINDS
from .report import FAIL
from .snumbers import ProfileConfig, profile
from .spaces import OperatorInstance, parse_exponent
from .verify import SUITES, default_threads, run_suites
from .witness import chain_identity_checks, gelfand_chain, kolmogorov_chain

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

KIND_ALIASES = {k: k for k in KINDS}
KIND_ALIASES.update({"a": "approximation", "b": "bernstein", "c": "gelfand", "d": "kolmogorov",
                     "x": "weyl", "h": "hilbert"})


def default_seed() -> int:
    raw = os.environ.get("SNUMLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"SNUMLAB_SEED must be an integer, got {raw!r}") from exc


def _positive_float(text):
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _kind(text):
    try:
        return KIND_ALIASES[text.lower()]
    except KeyError as exc:
        raise argparse.ArgumentTypeError(f"unknown kind {text!r}") from exc


def _add_common(p):
    p.add_argument("--seed", type=int, default=None, help="default: $SNUMLAB_SEED or 0")
    p.add_argument("--restarts", type=_positive_int, default=64)
    p.add_argument("--tol-exact", type=_positive_float, default=1e-9)
    p.add_argument("--tol-opt", type=_positive_float, default=1e-6)
    p.add_argument("--epsilon", type=_positive_float, default=1e-3)
    p.add_argument("--enum-cap", type=_positive_int, default=20)
    p.add_argument("--output", "-o", default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snumlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"snumlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="s-number profile of one operator")
    c.add_argument("matrix", nargs="?", default="-", help="matrix JSON file ('-' for stdin)")
    c.add_argument("--kind", type=_kind, action="append", help="restrict output to these kinds")
    c.add_argument("--nmax", type=_positive_int, default=None)
    c.add_argument("--p", dest="domain_p", default=None, help="override the domain exponent")
    c.add_argument("--q", dest="codomain_p", default=None, help="override the codomain exponent")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(c)

    w = sub.add_parser("witness", help="determinant witness chain")
    w.add_argument("matrix", nargs="?", default="-")
    w.add_argument("--variant", choices=("gelfand", "kolmogorov"), default="gelfand")
    w.add_argument("--n", type=_positive_int, default=None)
    _add_common(w)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), action="append", required=True)
    v.add_argument("--corpus", default=None, help="corpus JSON file (default: seeded corpus)")
    v.add_argument("--count", type=_positive_int, default=100)
    v.add_argument("--nmax", type=_positive_int, default=8, help="largest n for the T_n suite")
    v.add_argument("--threads", type=_positive_int, default=None, help="default: $SNUMLAB_THREADS or 1")
    _add_common(v)

    e = sub.add_parser("example", help="emit a benchmark operator or corpus")
    e.add_argument("which", choices=("tn", "corpus"))
    e.add_argument("--n", type=int, default=4)
    e.add_argument("--sigma", type=float, default=0.5)
    e.add_argument("--count", type=_positive_int, default=100)
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--output", "-o", default=None)
    return parser


def _config(args) -> ProfileConfig:
    seed = default_seed() if args.seed is None else args.seed
    return ProfileConfig(seed=seed, restarts=args.restarts, tol_exact=args.tol_exact,
                         tol_opt=args.tol_opt, epsilon=args.epsilon, enum_cap=args.enum_cap)


def _read_operator(path) -> OperatorInstance:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"matrix input is not valid JSON: {exc}") from exc
    return matrix_from_dict(obj)


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _echo(args, cfg: ProfileConfig) -> dict:
    out = {"command": args.command, **cfg.to_dict()}
    for key in ("nmax", "kind", "format", "variant", "n", "suite", "corpus", "count", "domain_p",
                "codomain_p"):
        if hasattr(args, key):
            out[key] = getattr(args, key)
    return out


def _cmd_compute(args) -> int:
    cfg = _config(args)
    op = _read_operator(args.matrix)
    if args.domain_p is not None or args.codomain_p is not None:
        p = op.domain.exponent if args.domain_p is None else parse_exponent(args.domain_p)
        q = op.codomain.exponent if args.codomain_p is None else parse_exponent(args.codomain_p)
        op = OperatorInstance.from_matrix(op.matrix, p, q)
    bundle = profile(op, args.nmax, cfg)
    kinds = args.kind or list(KINDS)
    if args.format == "csv":
        _emit(profile_csv(bundle, kinds), args.output)
        return EXIT_OK
    body = bundle.to_dict()
    body["reports"] = {k: v for k, v in body["reports"].items() if k in kinds}
    body["operator"]["matrix"] = matrix_to_dict(op)
    _emit(dumps(envelope("profile", body, _echo(args, cfg))), args.output)
    return EXIT_OK


def _cmd_witness(args) -> int:
    cfg = _config(args)
    op = _read_operator(args.matrix)
    n = args.n or min(op.shape)
    build = gelfand_chain if args.variant == "gelfand" else kolmogorov_chain
    chain = build(op, n, cfg.epsilon, cfg.options())
    records = chain_identity_checks(chain, op)
    body = {"chain": chain.to_dict(), "checks": [r.to_dict() for r in records]}
    _emit(dumps(envelope("witness", body, _echo(args, cfg))), args.output)
    return EXIT_VIOLATION if any(r.status == FAIL for r in records) else EXIT_OK


def _cmd_verify(args) -> int:
    cfg = _config(args)
    threads = args.threads or default_threads()
    if args.corpus is not None:
        corpus = read_corpus(args.corpus)
    else:
        corpus = make_corpus(CorpusSpec(seed=cfg.seed, count=args.count))
    reports = run_suites(args.suite, corpus, cfg, threads=threads, tn_nmax=args.nmax)
    passed = all(r.passed for r in reports)
    body = {"passed": passed, "suites": [r.to_dict() for r in reports]}
    _emit(dumps(envelope("verification", body, _echo(args, cfg))), args.output)
    return EXIT_OK if passed else EXIT_VIOLATION


def _cmd_example(args) -> int:
    if args.which == "tn":
        text = dumps(matrix_to_dict(make_t_matrix(args.n, args.sigma)))
        _emit(text, args.output)
        return EXIT_OK
    seed = default_seed() if args.seed is None else args.seed
    _emit(corpus_text(make_corpus(CorpusSpec(seed=seed, count=args.count))), args.output)
    return EXIT_OK


COMMANDS = {"compute": _cmd_compute, "witness": _cmd_witness, "verify": _cmd_verify,
            "example": _cmd_example}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except CertifiedViolation as exc:
        print(f"snumlab: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, CapabilityError) as exc:
        print(f"snumlab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"snumlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
