"""Average relative width (upper - lower) / upper of each kind, per space pair.

Shows where the certified intervals are tight and where only the lattice
keeps them finite.

    python scripts/gap_table.py --count 40
"""

import argparse
from collections import defaultdict

import numpy as np

from snumlab.examples import CorpusSpec, make_corpus
from snumlab.lattice import KINDS, SYMBOL
from snumlab.snumbers import ProfileConfig
from snumlab.spaces import format_exponent
from snumlab.verify import compute_profiles


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    spec = CorpusSpec(seed=args.seed, count=args.count, identities=(), diagonals=(), rank_deficient=())
    corpus = make_corpus(spec)
    widths = defaultdict(list)
    for op, b in zip(corpus, compute_profiles(list(corpus), ProfileConfig(seed=args.seed), args.threads)):
        pair = f"({format_exponent(op.domain.exponent)},{format_exponent(op.codomain.exponent)})"
        for k in KINDS:
            for v in b.reports[k].values:
                if v.upper:
                    widths[pair, k].append((v.upper - v.lower) / v.upper)
    pairs = sorted({p for p, _ in widths})
    print(f"{'pair':>8} " + " ".join(f"{SYMBOL[k]:>6}" for k in KINDS))
    for p in pairs:
        print(f"{p:>8} " + " ".join(f"{np.mean(widths[p, k]):6.3f}" for k in KINDS))


if __name__ == "__main__":
    main()
