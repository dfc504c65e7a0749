"""Hyperplane covers (fractional vertex covers) and their properties."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lp
from .errors import PreconditionError, ShapeError
from .matching import Polyplex, max_polyplex, max_weight
from .tensor import BinaryTensor, Index

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CoverTable:
    """d x n table of nonnegative weights, one per hyperplane."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if not rows:
            raise ShapeError("cover table needs at least one row")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("cover rows must have equal length")
        if any(x < 0 for r in rows for x in r):
            raise ShapeError("cover entries must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def zeros(cls, d: int, n: int) -> "CoverTable":
        return cls(tuple((0,) * n for _ in range(d)))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def weight(self) -> Fraction:
        return sum((x for r in self.rows for x in r), Fraction(0))

    def entries(self) -> list[Fraction]:
        return [x for r in self.rows for x in r]

    def sorted_rows(self) -> tuple:
        """Rows with entries in nonincreasing order (column order forgotten)."""
        return tuple(tuple(sorted(r, reverse=True)) for r in self.rows)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def cover_weight_at(cover: CoverTable, index) -> Fraction:
    if len(index) != cover.d:
        raise ShapeError(f"index {tuple(index)} has wrong length for d={cover.d}")
    try:
        return sum((cover.rows[i][a] for i, a in enumerate(index)), Fraction(0))
    except IndexError:
        raise ShapeError(f"index {tuple(index)} out of range for n={cover.n}") from None


def is_cover(cover: CoverTable, A: BinaryTensor) -> bool:
    if (cover.d, cover.n) != (A.d, A.n):
        return False
    return all(cover_weight_at(cover, c) >= 1 for c in A.support())


def induced_matrix(cover: CoverTable) -> BinaryTensor:
    """A(cover): the cells covered with weight at least 1."""
    cells = [c for c in itertools.product(range(cover.n), repeat=cover.d)
             if cover_weight_at(cover, c) >= 1]
    return BinaryTensor.from_support(cover.d, cover.n, cells)


def cover_problem(A: BinaryTensor) -> lp.LpProblem:
    """Variables lambda[i][j] at column i*n + j; one >= 1 row per support cell."""
    d, n = A.d, A.n
    rows = []
    for c in A.support():
        row = [0] * (d * n)
        for i, a in enumerate(c):
            row[i * n + a] = 1
        rows.append(row)
    return lp.LpProblem([1] * (d * n), rows, [lp.GE] * len(rows), [1] * len(rows))


def _table(values, d: int, n: int) -> CoverTable:
    return CoverTable(tuple(tuple(values[i * n:(i + 1) * n]) for i in range(d)))


def min_cover(A: BinaryTensor) -> tuple[Fraction, CoverTable]:
    """Optimal hyperplane cover of A as a basic solution of the cover LP."""
    sol = lp.solve(cover_problem(A), lp.MIN)
    return sol.objective_value, _table(sol.values, A.d, A.n)


def deficiency(A: BinaryTensor) -> Fraction:
    """n minus the maximum polyplex weight."""
    return A.n - max_weight(A)


def cover_is_unique(A: BinaryTensor) -> tuple[bool, Optional[CoverTable]]:
    """Decide exactly whether A has a single optimal cover.

    Every variable is probed for its range over the optimal face. When some
    range is nontrivial, the witness is an optimal cover that differs from
    the one returned by `min_cover`.
    """
    prob = cover_problem(A)
    ranges = lp.face_ranges(prob, lp.MIN, range(prob.n_vars))
    loose = next((v for v in sorted(ranges) if ranges[v][0] != ranges[v][1]), None)
    if loose is None:
        return True, None
    _, base = min_cover(A)
    lo, hi = ranges[loose]
    current = base.rows[loose // A.n][loose % A.n]
    target = lo if current == hi else hi
    face, _ = lp.face_problem(prob, lp.MIN)
    pin = [0] * prob.n_vars
    pin[loose] = 1
    sol = lp.solve(face.with_row(pin, lp.EQ, target), lp.MIN)
    return False, _table(sol.values, A.d, A.n)


def check_licq(A: BinaryTensor, K: Polyplex, over: str = "polyplex") -> bool:
    """Exact linear independence of the tight-hyperplane incidence vectors.

    Each hyperplane whose K-sum equals 1 contributes its 0/1 incidence
    vector. With ``over="polyplex"`` (default) the vectors are restricted to
    supp(K); this is the constraint qualification with the active bounds
    k_alpha = 0 taken into account, and a true result certifies that A has a
    unique optimal cover. ``over="support"`` uses all of supp(A); that
    variant is weaker and does not certify uniqueness for every matrix.
    """
    if over not in ("polyplex", "support"):
        raise ValueError(f"unknown vector domain {over!r}")
    if not K.contained_in(A) or not K.is_polyplex():
        raise PreconditionError("K is not a polyplex contained in A")
    if K.weight != max_weight(A):
        raise PreconditionError("K is not an optimal polyplex of A")
    cells = list(K.entries) if over == "polyplex" else A.support()
    sums = K.hyperplane_sums()
    vectors = [[1 if c[i] == j else 0 for c in cells]
               for i in range(A.d) for j in range(A.n) if sums[i][j] == 1]
    return lp.rank(vectors) == len(vectors)


def upper_indices(cover: CoverTable) -> list[Index]:
    """Cells covered with weight >= 1 whose dominated, differently weighted
    cells are all covered with weight < 1.

    beta is dominated by alpha when lambda[i][beta_i] <= lambda[i][alpha_i]
    for every direction i.
    """
    d, n = cover.d, cover.n
    cells = list(itertools.product(range(n), repeat=d))
    profile = {c: tuple(cover.rows[i][c[i]] for i in range(d)) for c in cells}
    weight = {c: sum(profile[c], Fraction(0)) for c in cells}
    out = []
    for a in cells:
        if weight[a] < 1:
            continue
        pa = profile[a]
        if all(weight[b] < 1 for b in cells
               if weight[b] != weight[a] and all(x <= y for x, y in zip(profile[b], pa))):
            out.append(a)
    return out


def check_upper_indices(cover: CoverTable) -> bool:
    return all(cover_weight_at(cover, a) == 1 for a in upper_indices(cover))


def delete_weights(cover: CoverTable, index) -> CoverTable:
    """Drop the weight of every hyperplane through `index`."""
    if cover.n < 2:
        raise ShapeError("delete_weights needs n >= 2")
    if len(index) != cover.d or any(not 0 <= a < cover.n for a in index):
        raise ShapeError(f"index {tuple(index)} invalid for the table")
    return CoverTable(tuple(r[:a] + r[a + 1:] for r, a in zip(cover.rows, index)))


def entries_multiple_of(cover: CoverTable, delta: Fraction) -> bool:
    return all((x / delta).denominator == 1 for x in cover.entries())


@dataclass
class StructuralReport:
    """Necessary conditions on an optimal cover of an extremal matrix.

    Each check is True/False; ``weight_one_per_hyperplane`` is None when the
    deficiency is 1 and the condition does not apply.
    """

    zero_in_each_row: bool
    weight_one_per_hyperplane: Optional[bool]
    no_weight_in_gap: bool
    row_gaps_at_least_delta: bool
    entries_within_bounds: bool
    few_big_entries: bool
    details: dict = field(default_factory=dict)

    CHECKS = ("zero_in_each_row", "weight_one_per_hyperplane", "no_weight_in_gap",
              "row_gaps_at_least_delta", "entries_within_bounds", "few_big_entries")

    def results(self) -> dict:
        return {k: getattr(self, k) for k in self.CHECKS}

    def failures(self) -> list[str]:
        return [k for k, v in self.results().items() if v is False]

    @property
    def passed(self) -> bool:
        return not self.failures()


def structural_checks(A: BinaryTensor, cover: CoverTable, delta) -> StructuralReport:
    """Run the necessary-condition battery for an optimal cover of A.

    All checks pass when A is extremal; any failure certifies that A is not.
    """
    delta = Fraction(delta)
    if not is_cover(cover, A):
        raise PreconditionError("table is not a hyperplane cover of A")
    if cover.weight != max_weight(A):
        raise PreconditionError("cover is not optimal for A")
    if cover.weight != A.n - delta:
        raise PreconditionError(f"deficiency {delta} inconsistent with cover weight {cover.weight}")
    d, n = A.d, A.n
    cells = list(itertools.product(range(n), repeat=d))
    w = {c: cover_weight_at(cover, c) for c in cells}
    details = {}

    zero_rows = all(any(x == 0 for x in r) for r in cover.rows)

    weight_one = None
    if delta < 1:
        missing = [(i, j) for i in range(d) for j in range(n)
                   if not any(w[c] == 1 for c in cells if c[i] == j)]
        weight_one = not missing
        details["hyperplanes_without_weight_one"] = missing

    gap = [c for c in cells if 1 - delta < w[c] < 1]
    details["cells_in_gap"] = gap

    close = []
    for i, r in enumerate(cover.rows):
        for a, b in itertools.combinations(range(n), 2):
            if r[a] != r[b] and abs(r[a] - r[b]) < delta:
                close.append((i, a, b))
    details["close_pairs"] = close

    out_of_bounds = [(i, j) for i, r in enumerate(cover.rows) for j, x in enumerate(r)
                     if x not in (0, 1) and not delta <= x <= 1 - delta]
    details["out_of_bounds"] = out_of_bounds

    big = sum(1 for x in cover.entries() if x > HALF)
    details["big_entries"] = big

    return StructuralReport(
        zero_in_each_row=zero_rows,
        weight_one_per_hyperplane=weight_one,
        no_weight_in_gap=not gap,
        row_gaps_at_least_delta=not close,
        entries_within_bounds=not out_of_bounds,
        few_big_entries=big < n,
        details=details,
    )


_BIG_DEFICIENCY_VALUES = {
    Fraction(1): frozenset({Fraction(0), Fraction(1)}),
    Fraction(1, 2): frozenset({Fraction(0), HALF, Fraction(1)}),
    Fraction(1, 3): frozenset({Fraction(0), Fraction(1, 3), Fraction(2, 3), Fraction(1)}),
}


@dataclass
class BigDeficiencyReport:
    delta: Fraction
    delta_possible: bool
    allowed_values: Optional[frozenset]
    entries_ok: Optional[bool]

    @property
    def consistent(self) -> bool:
        return self.delta_possible and self.entries_ok is not False


def classify_big_deficiency(delta, cover: Optional[CoverTable] = None) -> BigDeficiencyReport:
    """Compare a deficiency (and optionally its cover) with the admissible values
    for extremal matrices of deficiency above 1/3."""
    delta = Fraction(delta)
    possible = 0 < delta <= 1 and not (HALF < delta < 1) and not (Fraction(1, 3) < delta < HALF)
    allowed = _BIG_DEFICIENCY_VALUES.get(delta)
    entries_ok = None
    if allowed is not None and cover is not None:
        entries_ok = all(x in allowed for x in cover.entries())
    return BigDeficiencyReport(delta, possible, allowed, entries_ok)
