"""Run the recursive colourer on seeded random SP graphs of each girth class and report timings."""

import argparse
import time

from spchoose.colours import check_colouring
from spchoose.constructive import colour_sp, parameters_for
from spchoose.instances import random_lists, random_sp_of_girth

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--graphs", type=int, default=100)
parser.add_argument("--kmax", type=int, default=12)
parser.add_argument("--mmax", type=int, default=4)
args = parser.parse_args()

print("k   m  list  ok       mean_vertices  seconds")
for k in range(3, args.kmax + 1):
    for m in range(1, args.mmax + 1):
        size = parameters_for(k, m)["list_size"]
        ok = vertices = 0
        started = time.perf_counter()
        for seed in range(args.graphs):
            _, g = random_sp_of_girth(k, seed)
            lists = random_lists(g.vertices, size, 6 * m, seed)
            phi = colour_sp(g, lists, m, k)
            ok += check_colouring(g, lists, phi, m).ok and set(phi) == set(g.vertices)
            vertices += len(g.vertices)
        print(f"{k:<3} {m:<2} {size:<5} {ok}/{args.graphs:<5} {vertices / args.graphs:<14.1f} "
              f"{time.perf_counter() - started:.2f}")
