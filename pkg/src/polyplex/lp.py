"""Exact rational linear programming.

Two-phase primal simplex on a dense tableau with Bland's rule. All
arithmetic is exact; gmpy2's mpq is used inside the tableau when available
and results are handed back as ``fractions.Fraction``.

Variables are always bounded below by zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeError

try:  # faster exact rationals for the pivoting inner loop
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

LE, GE, EQ = "<=", ">=", "="
MAX, MIN = "max", "min"

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

_ZERO = _Q(0)
_SMALL = {k: Fraction(k) for k in range(-16, 17)}  # shared immutable constants


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return _SMALL[x] if x in _SMALL else Fraction(x)
    try:
        num, den = int(x.numerator), int(x.denominator)
    except AttributeError:
        return Fraction(x)
    if den == 1 and num in _SMALL:
        return _SMALL[num]
    return Fraction(num, den)


@dataclass(frozen=True)
class LpProblem:
    """max/min c.x subject to rows[i].x (sense) rhs[i], x >= 0."""

    objective: tuple
    rows: tuple
    senses: tuple
    rhs: tuple

    def __post_init__(self):
        obj = tuple(_frac(c) for c in self.objective)
        rows = tuple(tuple(_frac(c) for c in r) for r in self.rows)
        senses = tuple(self.senses)
        rhs = tuple(_frac(b) for b in self.rhs)
        if not (len(rows) == len(senses) == len(rhs)):
            raise ShapeError("rows, senses and rhs must have equal length")
        if any(len(r) != len(obj) for r in rows):
            raise ShapeError("every row must have one coefficient per variable")
        if any(s not in (LE, GE, EQ) for s in senses):
            raise ShapeError(f"unknown constraint sense in {senses}")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "senses", senses)
        object.__setattr__(self, "rhs", rhs)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def with_row(self, coeffs, sense, rhs) -> "LpProblem":
        return LpProblem(self.objective, self.rows + (tuple(coeffs),),
                         self.senses + (sense,), self.rhs + (rhs,))

    def with_objective(self, objective) -> "LpProblem":
        return LpProblem(tuple(objective), self.rows, self.senses, self.rhs)

    def value_of(self, x: Sequence) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def is_feasible_point(self, x: Sequence) -> bool:
        if len(x) != self.n_vars or any(v < 0 for v in x):
            return False
        for row, sense, b in zip(self.rows, self.senses, self.rhs):
            lhs = sum((c * v for c, v in zip(row, x) if c), Fraction(0))
            if sense == LE and lhs > b or sense == GE and lhs < b or sense == EQ and lhs != b:
                return False
        return True


@dataclass(frozen=True)
class LpSolution:
    """Outcome of `solve`.

    ``basis`` lists the basic columns of the standard-form matrix built by
    `standard_form`: structural variables are 0..n_vars-1, followed by one
    slack or surplus column per inequality row (in row order). ``basis_rows``
    are the constraint rows kept after redundant equalities were dropped.
    ``duals`` holds one multiplier per original row.
    """

    status: str
    values: tuple = ()
    objective_value: Fraction | None = None
    basis: tuple = ()
    basis_rows: tuple = ()
    duals: tuple = ()

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def standard_form(p: LpProblem) -> list[list[Fraction]]:
    """[A | S] where S holds +1 slack for <= rows and -1 surplus for >= rows."""
    n_slack = sum(1 for s in p.senses if s != EQ)
    out = []
    k = 0
    for row, sense in zip(p.rows, p.senses):
        extra = [Fraction(0)] * n_slack
        if sense != EQ:
            extra[k] = Fraction(1 if sense == LE else -1)
            k += 1
        out.append(list(row) + extra)
    return out


def _q(x):
    """Exact conversion to the tableau's rational type."""
    if isinstance(x, Fraction):
        return _Q(x.numerator, x.denominator) if x else _ZERO
    return _Q(x)


class _Tableau:
    """Dense simplex tableau maximizing with Bland's rule.

    Columns: structural | slack/surplus | artificial. ``ident[i]`` is the
    column that started as the i-th unit vector (slack or artificial).
    """

    def __init__(self, p: LpProblem):
        self.n = p.n_vars
        m = p.n_rows
        n_slack = sum(1 for s in p.senses if s != EQ)
        self.n_slack = n_slack
        self.sign = []  # row multiplier applied to reach rhs >= 0
        slack_col = []
        k = 0
        for s in p.senses:
            slack_col.append(self.n + k if s != EQ else None)
            if s != EQ:
                k += 1
        art_base = self.n + n_slack
        rows = []
        ident = []
        n_art = 0
        art_rows = []
        for i, (row, sense, b) in enumerate(zip(p.rows, p.senses, p.rhs)):
            sg = -1 if b < 0 else 1
            self.sign.append(sg)
            eff = sense
            if sg < 0 and sense != EQ:
                eff = GE if sense == LE else LE
            r = [_q(c) for c in row] + [_ZERO] * n_slack
            if sg < 0:
                r = [-c for c in r]
            if slack_col[i] is not None:
                r[slack_col[i]] = _Q(sg if sense == LE else -sg)
            rows.append((r, _q(b) if sg > 0 else -_q(b), eff, i))
            if eff == LE:
                ident.append(slack_col[i])
            else:
                ident.append(None)
                art_rows.append(i)
                n_art += 1
        self.n_art = n_art
        self.width = art_base + n_art
        self.T = []
        self.b = []
        self.row_id = []  # original row index of each tableau row
        a = 0
        for (r, bb, eff, i) in rows:
            r = r + [_ZERO] * n_art
            if ident[i] is None:
                r[art_base + a] = _Q(1)
                ident[i] = art_base + a
                a += 1
            self.T.append(r)
            self.b.append(bb)
            self.row_id.append(i)
        self.m_orig = m
        self.ident = ident
        self.art_base = art_base
        self.basis = [ident[i] for i in range(m)]
        self.barred = set()
        self.z = None
        self.zval = None

    def copy(self) -> "_Tableau":
        t = object.__new__(_Tableau)
        t.__dict__.update(self.__dict__)
        t.T = [list(r) for r in self.T]
        t.b = list(self.b)
        t.row_id = list(self.row_id)
        t.basis = list(self.basis)
        t.barred = set(self.barred)
        t.z = list(self.z) if self.z is not None else None
        return t

    def set_objective(self, cost: Sequence):
        """Install reduced costs for maximizing cost.x (cost over all columns)."""
        cost = [_q(c) for c in cost] + [_ZERO] * (self.width - len(cost))
        z = list(cost)
        zval = _ZERO
        for i, bc in enumerate(self.basis):
            cb = cost[bc]
            if cb:
                row = self.T[i]
                for j in range(self.width):
                    if row[j]:
                        z[j] -= cb * row[j]
                zval += cb * self.b[i]
        self.z = z
        self.zval = zval

    def pivot(self, r: int, c: int):
        row = self.T[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            for j in range(self.width):
                if row[j]:
                    row[j] *= inv
            self.b[r] *= inv
        nz = [j for j in range(self.width) if row[j]]
        br = self.b[r]
        for i in range(len(self.T)):
            if i == r:
                continue
            other = self.T[i]
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.b[i] -= f * br
        f = self.z[c]
        if f:
            for j in nz:
                self.z[j] -= f * row[j]
            self.zval += f * br
        self.basis[r] = c

    def optimize(self) -> str:
        while True:
            enter = None
            for j in range(self.width):
                if self.z[j] > 0 and j not in self.barred:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i in range(len(self.T)):
                a = self.T[i][enter]
                if a > 0:
                    ratio = self.b[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best = ratio
                        leave = i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, enter)

    def phase_one(self) -> bool:
        """Reach a basic feasible solution; False if the problem is infeasible."""
        if self.n_art:
            cost = [_ZERO] * self.width
            for j in range(self.art_base, self.width):
                cost[j] = _Q(-1)
            self.set_objective(cost)
            self.optimize()
            if self.zval < 0:
                return False
            self._drive_out_artificials()
        self.barred = set(range(self.art_base, self.width))
        return True

    def _drive_out_artificials(self):
        i = 0
        while i < len(self.T):
            if self.basis[i] >= self.art_base:
                row = self.T[i]
                col = next((j for j in range(self.art_base) if row[j]), None)
                if col is None:  # redundant equality row
                    del self.T[i]
                    del self.b[i]
                    del self.basis[i]
                    del self.row_id[i]
                    continue
                self.pivot(i, col)
            i += 1

    def primal(self) -> list:
        x = [_ZERO] * self.width
        for i, bc in enumerate(self.basis):
            x[bc] = self.b[i]
        return x


def _structural_cost(p: LpProblem, sense: str) -> list:
    if sense not in (MAX, MIN):
        raise ShapeError(f"sense must be 'max' or 'min', got {sense!r}")
    return list(p.objective) if sense == MAX else [-c for c in p.objective]


def _finish(p: LpProblem, t: _Tableau, sense: str, status: str) -> LpSolution:
    if status != OPTIMAL:
        return LpSolution(status=status)
    x = t.primal()
    values = tuple(_frac(v) for v in x[: p.n_vars])
    sg = 1 if sense == MAX else -1
    duals = [Fraction(0)] * p.n_rows
    for i in set(t.row_id):
        # reduced cost of the initial identity column equals -y_i
        duals[i] = sg * t.sign[i] * -_frac(t.z[t.ident[i]])
    basis = tuple(sorted(c for c in t.basis if c < t.art_base))
    return LpSolution(status=OPTIMAL, values=values, objective_value=p.value_of(values),
                      basis=basis, basis_rows=tuple(sorted(t.row_id)), duals=tuple(duals))


def solve(p: LpProblem, sense: str = MAX) -> LpSolution:
    """Exact basic optimal solution of p, or an infeasible/unbounded status."""
    cost = _structural_cost(p, sense)
    t = _Tableau(p)
    if not t.phase_one():
        return LpSolution(status=INFEASIBLE)
    t.set_objective(cost)
    return _finish(p, t, sense, t.optimize())


def face_problem(p: LpProblem, sense: str = MAX) -> tuple[LpProblem, LpSolution]:
    """The optimal face of p as an LP: p plus the row objective == optimum."""
    sol = solve(p, sense)
    if not sol.optimal:
        raise ShapeError(f"problem is {sol.status}; it has no optimal face")
    return p.with_row(p.objective, EQ, sol.objective_value), sol


def face_ranges(p: LpProblem, sense: str, variables: Iterable[int]):
    """Exact (min, max) of each listed variable over the optimal face of p.

    Phase one of the face LP is shared between all probes. ``max`` is None
    when the variable is unbounded on the face.
    """
    face, _ = face_problem(p, sense)
    base = _Tableau(face)
    if not base.phase_one():  # pragma: no cover - the optimum lies on the face
        raise ShapeError("optimal face unexpectedly infeasible")
    out = {}
    for v in variables:
        if not 0 <= v < p.n_vars:
            raise ShapeError(f"variable {v} out of range")
        lo_hi = []
        for sg in (-1, 1):
            t = base.copy()
            cost = [0] * p.n_vars
            cost[v] = sg
            t.set_objective(cost)
            status = t.optimize()
            if status == UNBOUNDED:
                lo_hi.append(None)
            else:
                lo_hi.append(_frac(t.primal()[v]))
        out[v] = (lo_hi[0], lo_hi[1])
    return out


def probe_optimal_face(p: LpProblem, sense: str, var: int) -> tuple:
    """Exact range (min, max) of x[var] over the set of optimal solutions."""
    return face_ranges(p, sense, [var])[var]


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix by Gaussian elimination."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    width = len(M[0])
    rk = 0
    for c in range(width):
        piv = next((i for i in range(rk, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        pr = M[rk]
        for i in range(len(M)):
            if i != rk and M[i][c] != 0:
                f = M[i][c] / pr[c]
                M[i] = [a - f * b for a, b in zip(M[i], pr)]
        rk += 1
        if rk == len(M):
            break
    return rk


def determinant(rows: Sequence[Sequence]) -> Fraction:
    M = [[Fraction(x) for x in r] for r in rows]
    size = len(M)
    if any(len(r) != size for r in M):
        raise ShapeError("determinant needs a square matrix")
    det = Fraction(1)
    for c in range(size):
        piv = next((i for i in range(c, size) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, size):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det
