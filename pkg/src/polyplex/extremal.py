"""Extremality and diagonal extremality."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .covers import CoverTable, cover_weight_at, is_cover
from .errors import PreconditionError
from . import lp
from .matching import bipartite_cover, find_diagonal, has_polydiagonal, polyplex_problem
from .tensor import BinaryTensor, Index, delete_around


@dataclass(frozen=True)
class ExtremalityVerdict:
    is_extremal: bool
    deficiency: Fraction
    has_polydiagonal: bool
    failing_zero: Optional[Index] = None

    def describe(self) -> str:
        if self.is_extremal:
            return f"extremal: deficiency {self.deficiency}"
        if self.has_polydiagonal:
            return "not extremal: has polydiagonal"
        cell = " ".join(str(x + 1) for x in self.failing_zero)
        return f"not extremal: flipping zero ({cell}) gives no polydiagonal"


def is_extremal(A: BinaryTensor) -> ExtremalityVerdict:
    """No polydiagonal in A, but one appears after flipping any single zero.

    The optimal cover read off the polyplex LP's duals settles most zeros at
    once: flipping a zero that it covers with weight >= 1 leaves a cover of
    weight n - delta < n, so no polydiagonal can appear. The remaining zeros
    are flipped and checked one by one.
    """
    if A.d == 2:
        return _is_extremal_matrix(A)
    if find_diagonal(A) is not None:
        return ExtremalityVerdict(False, Fraction(0), True)
    prob, cells = polyplex_problem(A)
    if cells:
        sol = lp.solve(prob, lp.MAX)
        w, duals = sol.objective_value, sol.duals
    else:
        w, duals = Fraction(0), [Fraction(0)] * (A.d * A.n)
    delta = A.n - w
    if delta == 0:
        return ExtremalityVerdict(False, delta, True)
    cover = CoverTable(tuple(tuple(duals[i * A.n:(i + 1) * A.n]) for i in range(A.d)))
    zeros = A.zero_cells()
    for z in zeros:
        if cover_weight_at(cover, z) >= 1:
            return ExtremalityVerdict(False, delta, False, z)
    for z in zeros:
        if not has_polydiagonal(A.with_cell(z, 1)):
            return ExtremalityVerdict(False, delta, False, z)
    return ExtremalityVerdict(True, delta, False)


def _is_extremal_matrix(A: BinaryTensor) -> ExtremalityVerdict:
    """d = 2: the polyplex LP is integral, so matchings and Konig covers decide everything."""
    n = A.n
    a = A.array
    rows = [[j for j in range(n) if a[i, j]] for i in range(n)]
    size, cov_rows, cov_cols = bipartite_cover(rows, n)
    delta = Fraction(n - size)
    if delta == 0:
        return ExtremalityVerdict(False, delta, True)
    zeros = A.zero_cells()
    for z in zeros:
        if z[0] in cov_rows or z[1] in cov_cols:
            return ExtremalityVerdict(False, delta, False, z)
    for i, j in zeros:
        flipped = [r + [j] if k == i else r for k, r in enumerate(rows)]
        if bipartite_cover(flipped, n)[0] < n:
            return ExtremalityVerdict(False, delta, False, (i, j))
    return ExtremalityVerdict(True, delta, False)


def is_diagonally_extremal(A: BinaryTensor) -> tuple[bool, Optional[Index]]:
    """Every deletion submatrix around a zero cell has a diagonal.

    Requires that A has no polydiagonal. Order 1 is handled by treating the
    empty order-0 submatrix as having the empty diagonal.
    """
    if has_polydiagonal(A):
        raise PreconditionError("A has a polydiagonal")
    for z in A.zero_cells():
        if A.n == 1:
            continue
        if find_diagonal(delete_around(A, z)) is None:
            return False, z
    return True, None


@dataclass
class MinorReport:
    """(beta, alpha, passed) for each zero beta dominated by an index alpha
    covered with weight 1 - delta."""

    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.checks)


def check_minor_polydiagonal(A: BinaryTensor, cover: CoverTable, delta) -> MinorReport:
    delta = Fraction(delta)
    if not is_cover(cover, A) or cover.weight != A.n - delta:
        raise PreconditionError("cover is not an optimal cover of deficiency delta for A")
    cells = list(itertools.product(range(A.n), repeat=A.d))
    low = [a for a in cells if cover_weight_at(cover, a) == 1 - delta]
    report = MinorReport()
    for beta in A.zero_cells():
        for alpha in low:
            if all(cover.rows[i][beta[i]] <= cover.rows[i][alpha[i]] for i in range(A.d)):
                ok = A.n == 1 or has_polydiagonal(delete_around(A, beta))
                report.checks.append((beta, alpha, ok))
                break
    return report


def rearrangement_feasible(table) -> bool:
    """Can entries be permuted within each row so every column sums to >= 1?

    Columns are interchangeable, so the search state is the sorted tuple of
    partial column sums (capped at 1).
    """
    rows = [tuple(Fraction(x) for x in r) for r in (table.rows if hasattr(table, "rows") else table)]
    if not rows:
        return False
    width = len(rows[0])
    if width == 0:
        return True
    one = Fraction(1)

    @lru_cache(maxsize=None)
    def go(k, sums):
        if k == len(rows):
            return all(s >= one for s in sums)
        for perm in set(itertools.permutations(rows[k])):
            nxt = tuple(sorted(min(one, s + x) for s, x in zip(sums, perm)))
            if go(k + 1, nxt):
                return True
        return False

    return go(0, (Fraction(0),) * width)
