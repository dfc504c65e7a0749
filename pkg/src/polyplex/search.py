"""Enumeration of small candidates, the fixture corpus and the conjecture harness."""
from __future__ import annotations

import hashlib
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from . import formats, lp
from .constructions import (YoungDiagram, attach_one, attach_split, duplicate_index,
                            lift_cover, lift_dimension, partitions, split_essential_weight,
                            two_value_cover)
from .covers import (CoverTable, check_licq, cover_is_unique, cover_weight_at,
                     entries_multiple_of, induced_matrix, min_cover)
from .errors import ChecksumError, GuardError, PolyplexError
from .extremal import is_diagonally_extremal, is_extremal
from .matching import find_diagonal, has_polydiagonal, max_polyplex, polyplex_problem
from .tensor import BinaryTensor, canonical_key, delete_around, is_antipodal

MODES = ("stepped_exhaustive", "antipodal_order2", "random_flips", "zero_one_covers")
DEFAULT_GUARD = 20_000


def _guard(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("POLYPLEX_GUARD")
    return int(env) if env else DEFAULT_GUARD


def class_key(A: BinaryTensor) -> bytes:
    """Canonical key, or the raw bits when canonicalization hits its guard."""
    try:
        return canonical_key(A)
    except GuardError:
        return b"raw" + bytes([A.d, A.n]) + bytes(A.bits())


def dedupe(tensors: Iterable[BinaryTensor]) -> list[BinaryTensor]:
    seen, out = set(), []
    for A in tensors:
        k = class_key(A)
        if k not in seen:
            seen.add(k)
            out.append(A)
    return out


# ---------------------------------------------------------------- enumeration

def _down_sets(d: int, n: int, guard: int) -> list[np.ndarray]:
    """All down-closed 0/1 arrays of shape (n,)*d (slices weakly decrease)."""
    if d == 1:
        return [np.array([1] * k + [0] * (n - k), dtype=np.uint8) for k in range(n, -1, -1)]
    lower = _down_sets(d - 1, n, guard)
    flat = [x.reshape(-1) for x in lower]
    m = len(lower)
    below = [[k for k in range(m) if (flat[k] <= flat[j]).all()] for j in range(m)]
    out = []

    def chain(prefix):
        if len(out) > guard:
            raise GuardError(f"stepped enumeration exceeds guard {guard}")
        if len(prefix) == n:
            out.append(np.stack([lower[k] for k in prefix]))
            return
        for k in (below[prefix[-1]] if prefix else range(m)):
            chain(prefix + [k])

    chain([])
    return out


def enumerate_stepped(d: int, n: int, guard: Optional[int] = None,
                      dedupe_classes: bool = True) -> Iterator[BinaryTensor]:
    """Stepped tensors of dimension d and order n, one per equivalence class."""
    arrays = _down_sets(d, n, _guard(guard))
    tensors = (BinaryTensor(a) for a in arrays)
    yield from (dedupe(tensors) if dedupe_classes else tensors)


def enumerate_antipodal(d: int, stepped_only: bool = False, samples: Optional[int] = None,
                        seed: int = 0, guard: Optional[int] = None) -> Iterator[BinaryTensor]:
    """Antipodal order-2 tensors up to equivalence.

    Exhaustive over all 2**(2**(d-1)) assignments unless `stepped_only`
    (down-closed tensors only, which still meets every equivalence class of
    extremal matrices) or `samples` (that many random assignments) is given.
    """
    limit = _guard(guard)
    cells = list(itertools.product(range(2), repeat=d))
    reps = [c for c in cells if c[0] == 0]
    if stepped_only:
        cand = (A for A in enumerate_stepped(d, 2, guard, dedupe_classes=False) if is_antipodal(A))
    elif samples is not None:
        rng = np.random.default_rng(seed)
        cand = (_antipodal_from_bits(d, reps, rng.integers(0, 2, len(reps))) for _ in range(samples))
    else:
        if 2 ** len(reps) > limit:
            raise GuardError(f"{2 ** len(reps)} antipodal candidates exceed guard {limit}")
        cand = (_antipodal_from_bits(d, reps, bits)
                for bits in itertools.product((0, 1), repeat=len(reps)))
    yield from dedupe(cand)


def _antipodal_from_bits(d, reps, bits) -> BinaryTensor:
    a = np.zeros((2,) * d, dtype=np.uint8)
    for c, b in zip(reps, bits):
        a[c] = b
        a[tuple(1 - x for x in c)] = 1 - b
    return BinaryTensor(a)


def enumerate_zero_one_covers(d: int, n: int) -> Iterator[BinaryTensor]:
    """A(cover) for every 0/1 cover table, one table per row-count multiset."""
    seen = set()
    for counts in itertools.combinations_with_replacement(range(n, -1, -1), d):
        rows = tuple((1,) * k + (0,) * (n - k) for k in counts)
        A = induced_matrix(CoverTable(rows))
        k = class_key(A)
        if k not in seen:
            seen.add(k)
            yield A


def random_extremal(d: int, n: int, rng) -> BinaryTensor:
    """Add cells in random order while no polydiagonal appears.

    The result has no polydiagonal and every zero was rejected against a
    subset of it, so it is extremal.
    """
    A = BinaryTensor.zeros(d, n)
    cells = list(A.indices())
    for k in rng.permutation(len(cells)):
        B = A.with_cell(cells[k], 1)
        if not has_polydiagonal(B):
            A = B
    return A


# ---------------------------------------------------------------- fixtures

@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "core" or "aux"
    d: int
    n: int
    delta: Optional[Fraction]
    tensor: Optional[BinaryTensor]
    cover: Optional[CoverTable]
    polyplex: object = None


def _data_dir():
    return resources.files("polyplex") / "data"


def load_fixtures(kind: Optional[str] = None) -> list[Fixture]:
    """Printed matrices with their covers and deficiencies, checksum-verified."""
    base = _data_dir()
    out = []
    for line in (base / "MANIFEST").read_text().splitlines():
        if not line.strip():
            continue
        name, knd, d, n, delta, *files = line.split()
        if kind is not None and knd != kind:
            continue
        loaded = {}
        for item in files:
            fname, digest = item.split("=")
            text = (base / fname).read_text()
            if hashlib.sha256(text.encode()).hexdigest() != digest:
                raise ChecksumError(f"checksum mismatch for fixture file {fname}")
            loaded[fname] = text
        tensor = cover = poly = None
        for fname, text in loaded.items():
            if fname.endswith("_cover.txt"):
                cover = formats.parse_cover(text)
            elif fname.endswith("_polyplex.txt"):
                poly = formats.parse_polyplex(text)
            else:
                tensor = formats.parse_tensor(text)
        out.append(Fixture(name, knd, int(d), int(n),
                           None if delta == "-" else Fraction(delta), tensor, cover, poly))
    return out


def fixture(name: str) -> Fixture:
    for f in load_fixtures():
        if f.name == name:
            return f
    raise KeyError(name)


def fixture_path(name: str) -> Path:
    return Path(str(_data_dir() / name))


# ---------------------------------------------------------------- constructions

@dataclass(frozen=True)
class Generated:
    label: str
    tensor: BinaryTensor
    cover: CoverTable
    delta: Fraction


def construction_corpus(limit: int = 100, max_cells: int = 128) -> list[Generated]:
    """Deterministic list of matrices produced by the constructions.

    Sources: lifts, the three growth clauses and order-2 splits applied to
    the core fixtures, and two-value covers from Young diagrams. Classes are
    deduplicated; tensors with more than `max_cells` cells are skipped.
    """
    seeds = [(f.name, f.cover, f.delta) for f in load_fixtures("core")]
    seeds.sort(key=lambda s: (s[1].n ** s[1].d, s[0]))
    items: list[Generated] = []
    keys = set()

    def add(label, cover, delta):
        if len(items) >= limit or cover.n ** cover.d > max_cells:
            return
        A = induced_matrix(cover)
        k = class_key(A)
        if k not in keys:
            keys.add(k)
            items.append(Generated(label, A, cover, Fraction(delta)))

    for m in (1, 2, 3):
        for d in range(max(2, m + 1), 6):
            for n in range(2, 5):
                for parts in partitions(m * n - 1, d, n - 1):
                    add(f"young{m}_d{d}n{n}_{YoungDiagram(parts)}",
                        two_value_cover(YoungDiagram(parts), m, d, n), Fraction(1, m))
    for name, cover, delta in seeds:
        for label, out in one_step(name, cover, delta):
            add(label, out, delta)
    return items


def one_step(name: str, cover: CoverTable, delta) -> Iterator[tuple[str, CoverTable]]:
    """Covers obtained from one optimal cover by a single construction step."""
    yield f"{name}+lift", lift_cover(cover)
    for row in range(cover.d):
        yield f"{name}+one{row + 1}", attach_one(cover, row)
    for i, j in itertools.permutations(range(cover.d), 2):
        if delta in cover.rows[j]:
            yield f"{name}+split{i + 1},{j + 1}", attach_split(cover, i, j, delta)
    ones = [c for c in itertools.product(range(cover.n), repeat=cover.d)
            if cover_weight_at(cover, c) == 1]
    for c in ones[:4]:
        yield f"{name}+dup{''.join(str(x + 1) for x in c)}", duplicate_index(cover, c)
    if cover.n == 2:
        for row in range(cover.d):
            try:
                split = split_essential_weight(cover, delta, row)
            except PolyplexError:
                continue
            yield f"{name}+essential{row + 1}", split


# ---------------------------------------------------------------- harness

CONJECTURES = (
    ("unique_cover", "every extremal matrix has a unique optimal cover"),
    ("reciprocal_deficiency", "the deficiency is 1/m for an integer m"),
    ("multiples_of_deficiency", "optimal cover entries are multiples of the deficiency"),
    ("diagonally_extremal", "every extremal matrix is diagonally extremal"),
    ("minor_polydiagonal", "A_alpha has a polydiagonal for every zero alpha"),
    ("cover_polydiagonal_has_diagonal", "A = A(cover) with a polydiagonal has a diagonal"),
    ("tight_planes_independent", "tight hyperplanes of an optimal polyplex are independent"),
    ("weight_one_in_optimal_polyplex", "weight-1 cells lie in some optimal polyplex"),
)
MAIN_CONJECTURES = ("unique_cover", "reciprocal_deficiency", "multiples_of_deficiency",
                    "diagonally_extremal")


@dataclass
class Tally:
    checked: int = 0
    passed: int = 0
    counterexamples: list = field(default_factory=list)  # (label, witness text)

    def record(self, ok: bool, label: str, witness: str):
        self.checked += 1
        if ok:
            self.passed += 1
        else:
            self.counterexamples.append((label, witness))


@dataclass
class SweepConfig:
    d_range: tuple = (3, 3)
    n_range: tuple = (2, 2)
    mode: Optional[str] = "stepped_exhaustive"
    seed: int = 0
    samples: int = 10
    guard: Optional[int] = None
    include_fixtures: bool = False
    include_constructions: bool = False
    construction_limit: int = 100
    explain: bool = False

    def __post_init__(self):
        if self.mode is not None and self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")

    @classmethod
    def empty(cls) -> "SweepConfig":
        return cls(mode=None)


@dataclass
class ConjectureReport:
    tallies: dict = field(default_factory=lambda: {k: Tally() for k, _ in CONJECTURES})
    candidates: int = 0
    extremal: int = 0
    deficiencies: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)
    outside: list = field(default_factory=list)  # labels not explained by known constructions

    def counterexample_count(self, names=MAIN_CONJECTURES) -> int:
        return sum(len(self.tallies[k].counterexamples) for k in names)

    def text(self) -> str:
        lines = ["conjecture report",
                 f"candidates examined: {self.candidates}",
                 f"extremal classes: {self.extremal}"]
        for src in sorted(self.sources):
            lines.append(f"  from {src}: {self.sources[src]}")
        lines.append("deficiencies:")
        for dn in sorted(self.deficiencies):
            vals = ", ".join(f"{v}:{c}" for v, c in sorted(self.deficiencies[dn].items(),
                                                          reverse=True))
            lines.append(f"  d={dn[0]} n={dn[1]}: {vals}")
        if self.outside:
            lines.append(f"outside fixtures and constructions: {len(self.outside)}")
            lines += [f"  {label}" for label in self.outside]
        for key, desc in CONJECTURES:
            t = self.tallies[key]
            lines.append(f"{key}: checked {t.checked}, passed {t.passed}, "
                         f"counterexamples {len(t.counterexamples)} ({desc})")
            for label, _ in t.counterexamples:
                lines.append(f"  witness {label}")
        return "\n".join(lines) + "\n"

    def write_witnesses(self, directory) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for key, _ in CONJECTURES:
            for k, (label, witness) in enumerate(self.tallies[key].counterexamples, 1):
                p = directory / f"{key}_{k:03d}.txt"
                p.write_text(witness)
                paths.append(p)
        return paths


def _witness(A: BinaryTensor, key: str, label: str) -> str:
    return f"# counterexample to {key}\n# source: {label}\n" + formats.format_tensor(A)


def _in_some_optimal_polyplex(A: BinaryTensor, cells) -> bool:
    prob, support = polyplex_problem(A)
    where = {c: k for k, c in enumerate(support)}
    ranges = lp.face_ranges(prob, lp.MAX, [where[c] for c in cells])
    return all(ranges[where[c]][1] > 0 for c in cells)


def examine(A: BinaryTensor, label: str, report: ConjectureReport,
            source: str = "sweep") -> bool:
    """Record one candidate; returns whether it is extremal."""
    report.candidates += 1
    verdict = is_extremal(A)
    if verdict.has_polydiagonal:
        _, cover = min_cover(A)
        if induced_matrix(cover) == A:
            report.tallies["cover_polydiagonal_has_diagonal"].record(
                find_diagonal(A) is not None, label,
                _witness(A, "cover_polydiagonal_has_diagonal", label))
    if not verdict.is_extremal:
        return False
    delta = verdict.deficiency
    report.extremal += 1
    report.sources[source] = report.sources.get(source, 0) + 1
    bucket = report.deficiencies.setdefault((A.d, A.n), {})
    bucket[delta] = bucket.get(delta, 0) + 1
    t = report.tallies
    unique, _ = cover_is_unique(A)
    t["unique_cover"].record(unique, label, _witness(A, "unique_cover", label))
    t["reciprocal_deficiency"].record(delta.numerator == 1, label,
                                      _witness(A, "reciprocal_deficiency", label))
    _, cover = min_cover(A)
    t["multiples_of_deficiency"].record(entries_multiple_of(cover, delta), label,
                                        _witness(A, "multiples_of_deficiency", label))
    diag, _ = is_diagonally_extremal(A)
    t["diagonally_extremal"].record(diag, label, _witness(A, "diagonally_extremal", label))
    if A.n > 1:
        minors = all(has_polydiagonal(delete_around(A, z)) for z in A.zero_cells())
        t["minor_polydiagonal"].record(minors, label, _witness(A, "minor_polydiagonal", label))
    _, K = max_polyplex(A)
    t["tight_planes_independent"].record(check_licq(A, K, over="support"), label,
                                         _witness(A, "tight_planes_independent", label))
    ones = [c for c in A.support() if cover_weight_at(cover, c) == 1]
    t["weight_one_in_optimal_polyplex"].record(
        _in_some_optimal_polyplex(A, ones), label,
        _witness(A, "weight_one_in_optimal_polyplex", label))
    return True


def _candidates(cfg: SweepConfig) -> Iterator[tuple[str, BinaryTensor]]:
    if cfg.mode is None:
        return
    rng = np.random.default_rng(cfg.seed)
    d_lo, d_hi = cfg.d_range
    n_lo, n_hi = cfg.n_range
    for d in range(d_lo, d_hi + 1):
        if cfg.mode == "antipodal_order2":
            # exhaustive up to d = 4, stepped at d = 5, random samples beyond
            if d >= 6:
                gen = enumerate_antipodal(d, samples=cfg.samples, seed=cfg.seed, guard=cfg.guard)
            else:
                gen = enumerate_antipodal(d, stepped_only=d == 5, guard=cfg.guard)
            for k, A in enumerate(gen):
                yield f"antipodal_d{d}_{k:04d}", A
            continue
        for n in range(n_lo, n_hi + 1):
            if cfg.mode == "stepped_exhaustive":
                for k, A in enumerate(enumerate_stepped(d, n, cfg.guard)):
                    yield f"stepped_d{d}n{n}_{k:05d}", A
            elif cfg.mode == "zero_one_covers":
                for k, A in enumerate(enumerate_zero_one_covers(d, n)):
                    yield f"zero_one_d{d}n{n}_{k:04d}", A
            else:
                for k in range(cfg.samples):
                    yield f"random_d{d}n{n}_{k:04d}", random_extremal(d, n, rng)


def run_conjecture_harness(cfg: SweepConfig) -> ConjectureReport:
    """Check the conjectures on every extremal class in the configured corpus.

    With `cfg.explain`, enumerated extremal classes that are neither core
    fixtures, corpus members, nor one construction step away from a class
    seen earlier in the run are listed in `report.outside`.
    """
    report = ConjectureReport()
    seen = set()
    known = set()
    if cfg.explain:
        known |= {class_key(f.tensor) for f in load_fixtures("core")}
        known |= {class_key(g.tensor) for g in construction_corpus(cfg.construction_limit)}

    def visit(label, A, source):
        k = class_key(A)
        if k in seen:
            return
        seen.add(k)
        extremal = examine(A, label, report, source)
        if not (cfg.explain and extremal):
            return
        if source not in ("fixtures", "constructions") and k not in known:
            report.outside.append(label)
        delta = A.n - min_cover(A)[0]
        for _, cover in one_step(label, min_cover(A)[1], delta):
            known.add(class_key(induced_matrix(cover)))

    if cfg.include_fixtures:
        for f in load_fixtures("core"):
            visit(f.name, f.tensor, "fixtures")
    if cfg.include_constructions:
        for g in construction_corpus(cfg.construction_limit):
            visit(g.label, g.tensor, "constructions")
    for label, A in _candidates(cfg):
        visit(label, A, cfg.mode)
    return report
