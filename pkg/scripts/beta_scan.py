#!/usr/bin/env python3
"""Grid-resolution scan of the type-II limit constant.

Shows the raw grid value converging from above as the face grid refines,
then the refined value at the requested tolerance.

Example:
    python scripts/beta_scan.py --a 3 --grids 8 16 32 --tol 1e-4
"""

import argparse
import sys

from sumchoice.type2 import beta


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a", type=int, default=3, choices=(2, 3))
    parser.add_argument("--grids", type=int, nargs="+", default=[8, 16, 32])
    parser.add_argument("--tol", type=float, default=1e-4)
    args = parser.parse_args()

    sys.stdout.write("grid,refined,beta\n")
    for n in args.grids:
        value = beta(args.a, args.tol, grid=n, refine=False)
        sys.stdout.write(f"{n},0,{value:.8f}\n")
    final = beta(args.a, args.tol, grid=max(args.grids))
    sys.stdout.write(f"{max(args.grids)},1,{final:.8f}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
