"""Command-line front end.

Data goes to standard output, diagnostics to standard error. Exit codes:
0 success, 1 domain error (bad file contents, failed precondition, failed
gate), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import formats
from .constructions import (YoungDiagram, attach_one, attach_split, duplicate_index,
                            gale_ryser_exists, lift_dimension, shrink_order,
                            split_essential_weight, two_value_cover)
from .covers import cover_is_unique, induced_matrix, min_cover, structural_checks
from .errors import PolyplexError
from .extremal import is_diagonally_extremal, is_extremal
from .matching import max_polyplex
from .search import MODES, SweepConfig, load_fixtures, run_conjecture_harness


class DomainError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}")


def cmd_solve(args, out):
    w, K = max_polyplex(formats.read_tensor(args.file))
    out.write(f"# weight: {formats.format_rational(w)}\n")
    out.write(formats.format_polyplex(K))


def cmd_cover(args, out):
    w, cover = min_cover(formats.read_tensor(args.file))
    out.write(f"# weight: {formats.format_rational(w)}\n")
    out.write(formats.format_cover(cover))


def cmd_deficiency(args, out):
    A = formats.read_tensor(args.file)
    w, _ = max_polyplex(A)
    out.write(formats.format_rational(A.n - w) + "\n")


def cmd_extremal(args, out):
    A = formats.read_tensor(args.file)
    verdict = is_extremal(A)
    out.write(verdict.describe() + "\n")
    if verdict.has_polydiagonal:
        return
    out.write(f"deficiency: {formats.format_rational(verdict.deficiency)}\n")
    diag, witness = is_diagonally_extremal(A)
    line = f"diagonally extremal: {_yes(diag)}"
    if witness is not None:
        line += " (zero " + " ".join(str(x + 1) for x in witness) + ")"
    out.write(line + "\n")
    unique, _ = cover_is_unique(A)
    out.write(f"unique cover: {_yes(unique)}\n")
    _, cover = min_cover(A)
    report = structural_checks(A, cover, verdict.deficiency)
    for name, value in report.results().items():
        out.write(f"{name}: {'n/a' if value is None else _yes(value)}\n")


def cmd_induce(args, out):
    out.write(formats.format_tensor(induced_matrix(formats.read_cover(args.file))))


def cmd_construct(args, out):
    kind = args.construction
    if kind == "lift":
        out.write(formats.format_tensor(lift_dimension(formats.read_tensor(args.file))))
        return
    if kind == "young":
        cover = two_value_cover(YoungDiagram(tuple(args.parts)), args.m, args.d, args.n)
        out.write(formats.format_cover(cover))
        return
    cover = formats.read_cover(args.file)
    if kind == "grow":
        if args.dup is not None:
            result = duplicate_index(cover, [x - 1 for x in args.dup])
        elif args.one is not None:
            result = attach_one(cover, args.one - 1)
        else:
            i, j = args.split
            result = attach_split(cover, i - 1, j - 1, delta=args.delta)
    elif kind == "shrink":
        result = shrink_order(cover)
        if result is None:
            raise DomainError("no column with a single 1 and zeros elsewhere")
    else:
        row = None if args.row is None else args.row - 1
        delta = args.delta if args.delta is not None else cover.n - cover.weight
        result = split_essential_weight(cover, delta, row)
    out.write(formats.format_cover(result))


def cmd_galeryser(args, out):
    out.write(_yes(gale_ryser_exists(args.r, args.s)) + "\n")


def cmd_sweep(args, out):
    cfg = SweepConfig(d_range=args.d, n_range=args.n, mode=args.mode, seed=args.seed,
                      samples=args.samples, include_fixtures=args.fixtures,
                      include_constructions=args.constructions, explain=args.explain)
    report = run_conjecture_harness(cfg)
    out.write(report.text())
    if args.witness_dir:
        for p in report.write_witnesses(args.witness_dir):
            print(f"wrote {p}", file=sys.stderr)
    if report.counterexample_count():
        raise DomainError("counterexamples found")


def cmd_fixtures(args, out):
    failed = 0
    for f in load_fixtures("core"):
        w, cover = min_cover(f.tensor)
        ok = f.tensor.n - w == f.delta and cover.sorted_rows() == f.cover.sorted_rows()
        failed += not ok
        out.write(f"{f.name}: delta {formats.format_rational(f.tensor.n - w)} "
                  f"{'ok' if ok else 'MISMATCH'}\n")
    if failed:
        raise DomainError(f"{failed} fixtures failed the gate")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyplex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    for verb, fn, helptext in (("solve", cmd_solve, "maximum polyplex"),
                               ("cover", cmd_cover, "minimum hyperplane cover"),
                               ("deficiency", cmd_deficiency, "n minus the maximum polyplex weight"),
                               ("extremal", cmd_extremal, "extremality verdict and report")):
        s = sub.add_parser(verb, help=helptext)
        s.add_argument("file", help="tensor file")
        s.set_defaults(func=fn)

    s = sub.add_parser("induce", help="matrix of cells covered with weight >= 1")
    s.add_argument("file", help="cover file")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("construct", help="build extremal matrices and covers")
    csub = s.add_subparsers(dest="construction", required=True)
    c = csub.add_parser("lift", help="add a direction")
    c.add_argument("file", help="tensor file")
    c = csub.add_parser("grow", help="add one to the order")
    c.add_argument("file", help="cover file")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--dup", type=_int_list, metavar="I1,...,ID",
                   help="duplicate the entries of an index covered with weight 1")
    g.add_argument("--one", type=int, metavar="ROW", help="attach 1 to ROW, 0 elsewhere")
    g.add_argument("--split", type=int, nargs=2, metavar=("ROW_I", "ROW_J"),
                   help="attach 1-delta to ROW_I and delta to ROW_J")
    c.add_argument("--delta", type=_rational, help="deficiency (default n - weight)")
    c = csub.add_parser("shrink", help="remove a unit column")
    c.add_argument("file", help="cover file")
    c = csub.add_parser("young", help="two-value cover from a Young diagram")
    c.add_argument("parts", type=_int_list, help="comma-separated parts, e.g. 3,2,1")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("split", help="split an essential weight of an order-2 cover")
    c.add_argument("file", help="cover file")
    c.add_argument("--delta", type=_rational, help="deficiency (default n - weight)")
    c.add_argument("--row", type=int, help="row to split (default: last)")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("galeryser", help="does a 0/1 matrix with these row/column sums exist")
    s.add_argument("r", type=_int_list)
    s.add_argument("s", type=_int_list)
    s.set_defaults(func=cmd_galeryser)

    s = sub.add_parser("sweep", help="conjecture harness over enumerated matrices")
    s.add_argument("--d", type=_range, default=(3, 3), metavar="D|LO..HI")
    s.add_argument("--n", type=_range, default=(2, 2), metavar="N|LO..HI")
    s.add_argument("--mode", choices=MODES, default="stepped_exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=10, help="random_flips samples per (d, n)")
    s.add_argument("--fixtures", action="store_true", help="include the fixture corpus")
    s.add_argument("--constructions", action="store_true", help="include constructed matrices")
    s.add_argument("--explain", action="store_true",
                   help="list extremal classes not reached by known constructions")
    s.add_argument("--witness-dir", help="directory for counterexample files")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("fixtures", help="fixture corpus tools")
    s.add_argument("action", choices=["verify"])
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (PolyplexError, DomainError, OSError) as exc:
        print(f"polyplex: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
