"""Build and certify gadgets over a grid of (k, m), printing size and runtime."""

import argparse
from math import comb

from spchoose.adversary import build_gadget
from spchoose.oracle import verify_gadget

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--kmax", type=int, default=10)
parser.add_argument("--max-pairs", type=int, default=5000)
parser.add_argument("--workers", type=int, default=1)
args = parser.parse_args()

print("k  m  e  paths  vertices  uncolourable  ms")
for k in range(3, args.kmax + 1):
    q = (k + 1) // 4
    for m in range(q + 1, q + 4):
        for e in range(1, m):
            if q * e >= m or comb(2 * m + e, m) ** 2 > args.max_pairs:
                continue
            bundle = build_gadget(k, m, e)
            cert = verify_gadget(bundle, workers=args.workers)
            good = cert.pairs_checked - len(cert.defects)
            print(f"{k:<2} {m:<2} {e:<2} {bundle.params['p']:<6} {len(bundle.graph.vertices):<9} "
                  f"{good}/{cert.pairs_checked:<8} {cert.runtime_ms}")
