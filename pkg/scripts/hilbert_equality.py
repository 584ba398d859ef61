"""All six kinds against the singular values on random l_2 operators.

    python scripts/hilbert_equality.py --count 50 --dim 8
"""

import argparse
import time


from snumlab.examples import gaussian_square
from snumlab.lattice import KINDS
from snumlab.linalg import singular_values
from snumlab.snumbers import profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--dim", type=int, default=8)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    t0 = time.perf_counter()
    worst = {k: 0.0 for k in KINDS}
    for op in gaussian_square(args.seed, args.count, args.dim):
        s = singular_values(op.matrix)
        b = profile(op)
        for k in KINDS:
            dev = max(max(abs(v.lower - s[i]), abs(v.upper - s[i])) for i, v in enumerate(b.reports[k].values))
            worst[k] = max(worst[k], dev)
    for k, dev in worst.items():
        print(f"{k:>14}: max deviation {dev:.2e}")
    print(f"{args.count} operators in {time.perf_counter() - t0:.2f}s")
    return 0 if max(worst.values()) <= 1e-6 else 1


if __name__ == "__main__":
    raise SystemExit(main())
