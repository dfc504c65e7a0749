"""Re-derive every fixture from scratch and print one row per matrix.

    python3 scripts/fixture_gate.py             # table of checks
    python3 scripts/fixture_gate.py --manifest  # also print fresh MANIFEST lines

For a core fixture the row shows the recomputed deficiency, whether the
optimal cover equals the stored one (up to sorting rows), extremality,
diagonal extremality and cover uniqueness. --manifest prints checksum lines
for the current data files; paste them into MANIFEST only after the table
shows every fixture ok.
"""
import argparse
import hashlib
import sys

from polyplex import formats
from polyplex.covers import cover_is_unique, min_cover
from polyplex.extremal import is_diagonally_extremal, is_extremal
from polyplex.search import _data_dir, load_fixtures


def yes(flag):
    return "yes" if flag else "no"


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--manifest", action="store_true", help="print regenerated MANIFEST lines")
    args = p.parse_args(argv)
    failed = 0
    print(f"{'name':24} {'d':>2} {'n':>2} {'delta':>6}  cover  extremal  diag  unique")
    for f in load_fixtures():
        if f.tensor is None or f.cover is None:
            continue
        w, cover = min_cover(f.tensor)
        delta = f.tensor.n - w
        same = cover.sorted_rows() == f.cover.sorted_rows()
        v = is_extremal(f.tensor)
        diag = is_diagonally_extremal(f.tensor)[0] if v.is_extremal else False
        unique = cover_is_unique(f.tensor)[0]
        ok = same and (f.delta is None or delta == f.delta)
        failed += not ok
        print(f"{f.name:24} {f.d:>2} {f.n:>2} {formats.format_rational(delta):>6}  "
              f"{'ok' if same else 'DIFF':5}  {yes(v.is_extremal):8}  {yes(diag):4}  {yes(unique)}")
    if args.manifest:
        base = _data_dir()
        for line in (base / "MANIFEST").read_text().splitlines():
            head, files = line.split()[:5], line.split()[5:]
            fresh = []
            for item in files:
                fname = item.split("=")[0]
                digest = hashlib.sha256((base / fname).read_text().encode()).hexdigest()
                fresh.append(f"{fname}={digest}")
            print(" ".join(head + fresh))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
