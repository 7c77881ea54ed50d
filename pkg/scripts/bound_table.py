"""Print the exact fractional choice number 2 + 1/q for each girth class."""

import argparse

from spchoose.bounds import bound_row

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--kmax", type=int, default=14)
args = parser.parse_args()
for k in range(3, args.kmax + 1):
    print(bound_row(k))
