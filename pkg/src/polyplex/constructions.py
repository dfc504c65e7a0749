"""Constructions of extremal matrices through their covers, plus Gale-Ryser."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .covers import CoverTable, cover_weight_at, induced_matrix
from .errors import PreconditionError, ShapeError
from .tensor import BinaryTensor


def lift_dimension(A: BinaryTensor) -> BinaryTensor:
    """(d+1)-dimensional tensor whose hyperplanes along the new last direction all equal A."""
    a = np.repeat(A.array[..., np.newaxis], A.n, axis=-1)
    return BinaryTensor(a)


def lift_cover(cover: CoverTable) -> CoverTable:
    """Optimal cover of the lifted matrix: the old rows plus a zero row."""
    return CoverTable(cover.rows + ((0,) * cover.n,))


def _delta(cover: CoverTable, delta) -> Fraction:
    return Fraction(cover.n - cover.weight if delta is None else delta)


def duplicate_index(cover: CoverTable, index) -> CoverTable:
    """Append lambda[i][index_i] to row i; index must be covered with weight exactly 1."""
    if len(index) != cover.d or any(not 0 <= a < cover.n for a in index):
        raise ShapeError(f"index {tuple(index)} invalid for the table")
    w = cover_weight_at(cover, index)
    if w != 1:
        raise PreconditionError(f"index is covered with weight {w}, need exactly 1")
    return CoverTable(tuple(r + (r[a],) for r, a in zip(cover.rows, index)))


def attach_one(cover: CoverTable, row: int) -> CoverTable:
    """Append a 1 to `row` and 0 to every other row."""
    if not 0 <= row < cover.d:
        raise ShapeError(f"row {row} out of range")
    return CoverTable(tuple(r + ((1,) if i == row else (0,)) for i, r in enumerate(cover.rows)))


def attach_split(cover: CoverTable, row_i: int, row_j: int, delta=None) -> CoverTable:
    """Append 1 - delta to row_i, delta to row_j and 0 elsewhere.

    Row row_j must already contain a delta entry. delta defaults to n minus
    the cover weight.
    """
    delta = _delta(cover, delta)
    if not (0 <= row_i < cover.d and 0 <= row_j < cover.d):
        raise ShapeError("row out of range")
    if row_i == row_j:
        raise PreconditionError("the two rows must differ")
    if not 0 < delta <= 1:
        raise PreconditionError(f"deficiency {delta} outside (0, 1]")
    if delta not in cover.rows[row_j]:
        raise PreconditionError(f"row {row_j} has no entry equal to {delta}")
    out = []
    for k, r in enumerate(cover.rows):
        extra = 1 - delta if k == row_i else delta if k == row_j else 0
        out.append(r + (extra,))
    return CoverTable(tuple(out))


def grow_order(cover: CoverTable, variant: str, *args, delta=None) -> CoverTable:
    """Dispatch to one of the three order-growing clauses.

    variant is "duplicate" (args: index), "one" (args: row) or
    "split" (args: row_i, row_j).
    """
    if variant == "duplicate":
        return duplicate_index(cover, *args)
    if variant == "one":
        return attach_one(cover, *args)
    if variant == "split":
        return attach_split(cover, *args, delta=delta)
    raise ValueError(f"unknown growth variant {variant!r}")


def shrink_order(cover: CoverTable) -> Optional[CoverTable]:
    """Remove the first column that is 1 in one row and 0 in all others, if any."""
    for j in range(cover.n):
        col = sorted(r[j] for r in cover.rows)
        if col[-1] == 1 and all(x == 0 for x in col[:-1]):
            if cover.n == 1:
                raise ShapeError("cannot shrink a table of width 1")
            return CoverTable(tuple(r[:j] + r[j + 1:] for r in cover.rows))
    return None


@dataclass(frozen=True)
class YoungDiagram:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts if int(p) != 0)
        if any(p < 0 for p in parts):
            raise ShapeError("parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ShapeError("parts must be nonincreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "YoungDiagram":
        text = text.strip()
        return cls(tuple(int(x) for x in text.split(",")) if text else ())

    @property
    def cells(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "YoungDiagram":
        return YoungDiagram(conjugate(self.parts))

    def __str__(self):
        return ",".join(map(str, self.parts))


def conjugate(parts: Sequence[int], length: Optional[int] = None) -> tuple:
    """s*_k = number of parts >= k, for k = 1 .. length (default: largest part)."""
    top = max(parts, default=0) if length is None else length
    return tuple(sum(1 for p in parts if p >= k) for k in range(1, top + 1))


def partitions(total: int, max_parts: int, max_part: int) -> Iterator[tuple]:
    """Partitions of total into at most max_parts parts, each at most max_part."""
    def go(left, slots, cap):
        if left == 0:
            yield ()
            return
        if slots == 0:
            return
        for p in range(min(left, cap), 0, -1):
            for rest in go(left - p, slots - 1, p):
                yield (p,) + rest

    yield from go(total, max_parts, max_part)


def two_value_cover(diagram: YoungDiagram, m: int, d: int, n: int) -> CoverTable:
    """Row i gets parts[i] entries 1/m (left-justified) and zeros elsewhere."""
    if m < 1 or m >= d:
        raise PreconditionError(f"need 1 <= m < d, got m={m}, d={d}")
    if diagram.rows > d:
        raise PreconditionError(f"diagram has {diagram.rows} rows, at most {d} allowed")
    if any(p > n - 1 for p in diagram.parts):
        raise PreconditionError(f"diagram parts must be at most n - 1 = {n - 1}")
    if diagram.cells != m * n - 1:
        raise PreconditionError(f"diagram has {diagram.cells} cells, need m*n - 1 = {m * n - 1}")
    step = Fraction(1, m)
    parts = diagram.parts + (0,) * (d - diagram.rows)
    return CoverTable(tuple((step,) * t + (0,) * (n - t) for t in parts))


def polyplex_weight_feasible_two_value(t: Sequence[int], m: int, n: int) -> bool:
    """Whether A(cover) with t[i] entries 1/m in row i has a polyplex of weight sum(t)/m."""
    W = Fraction(sum(t), m)
    if W > n:
        raise PreconditionError(f"W = {W} exceeds n = {n}")
    return max(t, default=0) <= W


def gale_ryser_exists(r: Sequence[int], s: Sequence[int]) -> bool:
    """Is there a 0/1 matrix with row sums r and column sums s?"""
    r, s = list(r), list(s)
    for name, seq in (("r", r), ("s", s)):
        if any(x < 0 for x in seq):
            raise PreconditionError(f"{name} has negative entries")
        if any(a < b for a, b in zip(seq, seq[1:])):
            raise PreconditionError(f"{name} is not nonincreasing")
    if sum(r) != sum(s):
        raise PreconditionError(f"sums differ: {sum(r)} vs {sum(s)}")
    star = conjugate(s, len(r))
    return all(a >= b for a, b in zip(itertools.accumulate(star), itertools.accumulate(r)))


def essential_weights(cover: CoverTable) -> list[Fraction]:
    """The nonzero entry of each row of an order-2 cover (0 for a zero row)."""
    if cover.n != 2:
        raise ShapeError("essential weights are defined for order 2")
    out = []
    for i, r in enumerate(cover.rows):
        if min(r) != 0:
            raise PreconditionError(f"row {i} has no zero entry")
        out.append(max(r))
    return out


def split_essential_weight(cover: CoverTable, delta, row: Optional[int] = None) -> CoverTable:
    """Replace essential weight lambda of `row` (default: the last) by two rows
    carrying lambda - delta and delta.

    The output has d + 1 rows with every essential weight in the first
    column. The cover must leave no cell of A(cover) with weight strictly
    between 1 and 1 + delta.
    """
    delta = Fraction(delta)
    ess = essential_weights(cover)
    row = cover.d - 1 if row is None else row
    if not 0 <= row < cover.d:
        raise ShapeError(f"row {row} out of range")
    if delta <= 0:
        raise PreconditionError("deficiency must be positive")
    if ess[row] - delta < 0:
        raise PreconditionError(f"essential weight {ess[row]} is smaller than delta {delta}")
    bad = [c for c in itertools.product(range(2), repeat=cover.d)
           if 1 < cover_weight_at(cover, c) < 1 + delta]
    if bad:
        cell = " ".join(str(x + 1) for x in bad[0])
        raise PreconditionError(
            f"cell ({cell}) is covered with weight strictly between 1 and 1 + delta")
    new = ess[:row] + [ess[row] - delta] + ess[row + 1:] + [delta]
    return CoverTable(tuple((w, 0) for w in new))


def split_matrix(cover: CoverTable, delta, row: Optional[int] = None) -> BinaryTensor:
    return induced_matrix(split_essential_weight(cover, delta, row))
