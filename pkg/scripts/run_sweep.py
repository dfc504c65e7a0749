"""Run preset conjecture sweeps and store each report under an output directory.

    python3 scripts/run_sweep.py                  # every preset
    python3 scripts/run_sweep.py small antipodal  # chosen presets
    python3 scripts/run_sweep.py --out results --seed 3

Each preset writes <out>/<preset>.txt; counterexamples (if any) go to
<out>/<preset>_witnesses/. Exit status 1 means at least one counterexample.
"""
import argparse
import dataclasses
import sys
import time
from pathlib import Path

from polyplex.search import SweepConfig, run_conjecture_harness

PRESETS = {
    "corpus": SweepConfig(mode=None, include_fixtures=True, include_constructions=True),
    "small": SweepConfig(d_range=(2, 3), n_range=(2, 3), explain=True),
    "matrices": SweepConfig(d_range=(2, 2), n_range=(2, 5), explain=True),
    "order_two": SweepConfig(d_range=(2, 5), n_range=(2, 2), explain=True),
    "antipodal": SweepConfig(d_range=(2, 6), mode="antipodal_order2", samples=40),
    "zero_one": SweepConfig(d_range=(2, 4), n_range=(2, 4), mode="zero_one_covers"),
    "random": SweepConfig(d_range=(3, 4), n_range=(2, 4), mode="random_flips", samples=25),
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("presets", nargs="*", choices=[[]] + list(PRESETS), default=[])
    p.add_argument("--out", default="results", help="output directory (default: results)")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized presets")
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name in args.presets or list(PRESETS):
        cfg = dataclasses.replace(PRESETS[name], seed=args.seed)
        start = time.perf_counter()
        report = run_conjecture_harness(cfg)
        (out / f"{name}.txt").write_text(report.text())
        found = report.counterexample_count()
        if found:
            report.write_witnesses(out / f"{name}_witnesses")
        bad += found
        print(f"{name}: {report.candidates} candidates, {report.extremal} extremal classes, "
              f"{found} counterexamples [{time.perf_counter() - start:.1f}s]")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
