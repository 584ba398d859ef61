"""Profiles of the identity l_1^m -> l_inf^m for small m.

Prints c_n and h_n bounds next to n * h_n, which stays bounded if h_n
decays like 1/n. Report-only apart from the two assertions at the end.

    python scripts/sharpness_probe.py --mmax 8
"""

import argparse

from snumlab.examples import identity_embedding
from snumlab.snumbers import ProfileConfig, profile, rank_one_hilbert_lower


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mmax", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = ProfileConfig(seed=args.seed)
    print(f"{'m':>2} {'n':>2} {'c lower':>9} {'c upper':>9} {'h lower':>9} {'h upper':>9} {'n*h_lo':>7}")
    for m in range(2, args.mmax + 1):
        b = profile(identity_embedding(m), config=cfg)
        c, h = b.reports["gelfand"].values, b.reports["hilbert"].values
        for n in range(1, m + 1):
            cv, hv = c[n - 1], h[n - 1]
            print(f"{m:>2} {n:>2} {cv.lower:9.4f} {cv.upper:9.4f} {hv.lower:9.4f} {hv.upper:9.4f} "
                  f"{n * hv.lower:7.3f}")
        assert all(v.upper <= 1.0 for v in c), "c upper exceeds ||I|| = 1"
        assert abs(rank_one_hilbert_lower(b.op, b.norm) - 1.0) <= 1e-9


if __name__ == "__main__":
    main()
