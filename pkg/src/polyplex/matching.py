"""Polyplexes (fractional matchings), polydiagonals and diagonals."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lp
from .errors import PreconditionError, ShapeError
from .tensor import BinaryTensor, Index, check_index


@dataclass(frozen=True)
class Polyplex:
    """Sparse nonnegative tensor; entries maps 0-based index tuples to positive rationals."""

    d: int
    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, v in self.entries.items():
            idx = tuple(int(x) for x in idx)
            v = Fraction(v)
            if len(idx) != self.d or any(not 0 <= x < self.n for x in idx):
                raise ShapeError(f"index {idx} invalid for d={self.d}, n={self.n}")
            if v < 0:
                raise ShapeError(f"negative entry {v} at {idx}")
            if v:
                clean[idx] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @property
    def weight(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def hyperplane_sum(self, direction: int, position: int) -> Fraction:
        return sum((v for idx, v in self.entries.items() if idx[direction] == position),
                   Fraction(0))

    def hyperplane_sums(self) -> list[list[Fraction]]:
        sums = [[Fraction(0)] * self.n for _ in range(self.d)]
        for idx, v in self.entries.items():
            for i, j in enumerate(idx):
                sums[i][j] += v
        return sums

    def is_polyplex(self) -> bool:
        return all(s <= 1 for row in self.hyperplane_sums() for s in row)

    def contained_in(self, A: BinaryTensor) -> bool:
        return (A.d, A.n) == (self.d, self.n) and all(A[idx] for idx in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Polyplex):
            return NotImplemented
        return (self.d, self.n, self.entries) == (other.d, other.n, other.entries)

    def __hash__(self):
        return hash((self.d, self.n, tuple(self.entries.items())))


def polyplex_problem(A: BinaryTensor) -> tuple[lp.LpProblem, list[Index]]:
    """LP over the support cells of A: maximize total weight, hyperplane sums <= 1."""
    cells = A.support()
    rows = []
    for i in range(A.d):
        for j in range(A.n):
            rows.append([1 if c[i] == j else 0 for c in cells])
    prob = lp.LpProblem([1] * len(cells), rows, [lp.LE] * len(rows), [1] * len(rows))
    return prob, cells


def max_polyplex(A: BinaryTensor) -> tuple[Fraction, Polyplex]:
    """Optimal polyplex in A as a basic solution of the polyplex LP."""
    prob, cells = polyplex_problem(A)
    if not cells:
        return Fraction(0), Polyplex(A.d, A.n, {})
    sol = lp.solve(prob, lp.MAX)
    K = Polyplex(A.d, A.n, {c: v for c, v in zip(cells, sol.values) if v})
    return sol.objective_value, K


def max_weight(A: BinaryTensor) -> Fraction:
    return max_polyplex(A)[0]


def has_polydiagonal(A: BinaryTensor) -> bool:
    if find_diagonal(A) is not None:  # an integer point settles it
        return True
    return max_weight(A) == A.n


def bipartite_cover(rows: list[list[int]], n: int) -> tuple[int, set, set]:
    """Maximum matching size and a minimum vertex cover (rows, columns).

    rows[i] lists the columns adjacent to row i. Kuhn's augmenting paths, then
    the Konig cover: unreached rows and reached columns of the alternating
    search from the unmatched rows.
    """
    match_col = [-1] * n
    match_row = [-1] * n

    def augment(i, seen):
        for j in rows[i]:
            if j not in seen:
                seen.add(j)
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j], match_row[i] = i, j
                    return True
        return False

    size = sum(augment(i, set()) for i in range(n))
    reached_rows = {i for i in range(n) if match_row[i] < 0}
    reached_cols = set()
    stack = list(reached_rows)
    while stack:
        i = stack.pop()
        for j in rows[i]:
            if j not in reached_cols:
                reached_cols.add(j)
                k = match_col[j]
                if k >= 0 and k not in reached_rows:
                    reached_rows.add(k)
                    stack.append(k)
    return size, set(range(n)) - reached_rows, reached_cols


def find_diagonal(A: BinaryTensor) -> Optional[tuple[Index, ...]]:
    """A diagonal of ones in A (sorted by first coordinate), or None.

    Exhaustive backtracking: each direction-1 position receives one cell whose
    remaining coordinates are still unused; most constrained position first.
    """
    d, n = A.d, A.n
    if d == 1:
        return tuple((j,) for j in range(n)) if all(A[(j,)] for j in range(n)) else None
    support = A.support()
    cand = {j: [c for c in support if c[0] == j] for j in range(n)}
    if any(not v for v in cand.values()):
        return None
    used = [set() for _ in range(d)]
    chosen: dict[int, Index] = {}

    def ok(c):
        return all(c[i] not in used[i] for i in range(1, d))

    def search():
        if len(chosen) == n:
            return True
        best_j, best_opts = None, None
        for j in range(n):
            if j in chosen:
                continue
            opts = [c for c in cand[j] if ok(c)]
            if best_opts is None or len(opts) < len(best_opts):
                best_j, best_opts = j, opts
                if not opts:
                    return False
        for c in best_opts:
            chosen[best_j] = c
            for i in range(1, d):
                used[i].add(c[i])
            if search():
                return True
            for i in range(1, d):
                used[i].discard(c[i])
            del chosen[best_j]
        return False

    if search():
        return tuple(chosen[j] for j in range(n))
    return None


def is_diagonal(A: BinaryTensor, cells) -> bool:
    cells = [check_index(A, c) for c in cells]
    if len(cells) != A.n or not all(A[c] for c in cells):
        return False
    return all(sorted(c[i] for c in cells) == list(range(A.n)) for i in range(A.d))


@dataclass
class SlacknessReport:
    """Violations of complementary slackness between a polyplex and a cover.

    ``cell_violations``: (index, k, cover weight) with k > 0 but weight != 1.
    ``plane_violations``: (direction, position, lambda, sum of K) with
    lambda > 0 but hyperplane sum != 1.
    """

    polyplex_weight: Fraction
    cover_weight: Fraction
    cell_violations: list = field(default_factory=list)
    plane_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.cell_violations and not self.plane_violations

    @property
    def weights_equal(self) -> bool:
        return self.polyplex_weight == self.cover_weight


def verify_slackness(A: BinaryTensor, K: Polyplex, cover) -> SlacknessReport:
    """Check both complementary slackness families for K and a cover of A.

    An empty report certifies that K and the cover are jointly optimal.
    """
    from .covers import cover_weight_at, is_cover

    if not K.contained_in(A) or not K.is_polyplex():
        raise PreconditionError("K is not a polyplex contained in A")
    if not is_cover(cover, A):
        raise PreconditionError("table is not a hyperplane cover of A")
    report = SlacknessReport(K.weight, cover.weight)
    for idx, k in K.entries.items():
        w = cover_weight_at(cover, idx)
        if w != 1:
            report.cell_violations.append((idx, k, w))
    sums = K.hyperplane_sums()
    for i in range(A.d):
        for j in range(A.n):
            lam = cover.rows[i][j]
            if lam > 0 and sums[i][j] != 1:
                report.plane_violations.append((i, j, lam, sums[i][j]))
    return report
