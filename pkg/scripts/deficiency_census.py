"""Tabulate the deficiencies of extremal classes found by the stepped enumeration.

    python3 scripts/deficiency_census.py
    python3 scripts/deficiency_census.py --shapes 2x5 3x3 4x2

Every equivalence class of extremal tensors has a down-closed (stepped)
representative, so the counts below are complete for each shape.
"""
import argparse
import sys
import time
from collections import Counter

from polyplex.extremal import is_extremal
from polyplex.search import enumerate_stepped

DEFAULT_SHAPES = ["2x2", "2x3", "2x4", "2x5", "3x2", "3x3", "4x2", "5x2"]


def shape(text):
    d, n = text.lower().split("x")
    return int(d), int(n)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--shapes", nargs="+", type=shape, default=[shape(s) for s in DEFAULT_SHAPES],
                   metavar="DxN")
    p.add_argument("--guard", type=int, default=None, help="enumeration size limit")
    args = p.parse_args(argv)
    for d, n in args.shapes:
        start = time.perf_counter()
        counts = Counter()
        classes = 0
        for A in enumerate_stepped(d, n, args.guard):
            classes += 1
            v = is_extremal(A)
            if v.is_extremal:
                counts[v.deficiency] += 1
        found = ", ".join(f"{delta}:{c}" for delta, c in sorted(counts.items(), reverse=True))
        print(f"d={d} n={n}: {classes} stepped classes, {sum(counts.values())} extremal "
              f"({found or 'none'}) [{time.perf_counter() - start:.1f}s]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
