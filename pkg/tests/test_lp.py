import random
from fractions import Fraction

import pytest

from oracles import vertex_enumeration_max
from polyplex import lp
from polyplex.covers import cover_problem
from polyplex.errors import ShapeError
from polyplex.matching import polyplex_problem
from polyplex.tensor import BinaryTensor


def random_problem(rng, n_vars, n_rows):
    """Bounded feasible instance: a box row keeps max finite, x = 0 feasible for <= rows."""
    rows, senses, rhs = [], [], []
    for _ in range(n_rows):
        rows.append([Fraction(rng.randint(-4, 6), rng.randint(1, 3)) for _ in range(n_vars)])
        senses.append(lp.LE)
        rhs.append(Fraction(rng.randint(0, 9), rng.randint(1, 3)))
    rows.append([1] * n_vars)
    senses.append(lp.LE)
    rhs.append(rng.randint(1, 10))
    obj = [Fraction(rng.randint(-5, 7), rng.randint(1, 4)) for _ in range(n_vars)]
    return lp.LpProblem(obj, rows, senses, rhs)


def dual_of(p):
    """Dual of max c.x, Ax <= b, x >= 0: min b.y, A^T y >= c, y >= 0."""
    cols = list(zip(*p.rows))
    return lp.LpProblem(p.rhs, cols, [lp.GE] * len(cols), p.objective)


def test_trivial_examples(fixtures):
    s = lp.solve(lp.LpProblem([1], [[1]], [lp.LE], [1]), lp.MAX)
    assert s.optimal and s.values == (1,) and s.objective_value == 1
    prob, _ = polyplex_problem(BinaryTensor.ones(2, 2))
    assert lp.solve(prob).objective_value == 2
    prob, _ = polyplex_problem(fixtures["appendix_d3n2"].tensor)
    assert lp.solve(prob).objective_value == Fraction(3, 2)


def test_statuses():
    assert lp.solve(lp.LpProblem([1], [[1]], [lp.GE], [1]), lp.MAX).status == lp.UNBOUNDED
    assert lp.solve(lp.LpProblem([1], [[1], [1]], [lp.LE, lp.GE], [1, 2])).status == lp.INFEASIBLE
    s = lp.solve(lp.LpProblem([1, 1], [[1, 1], [2, 2]], [lp.EQ, lp.EQ], [1, 2]), lp.MIN)
    assert s.optimal and s.objective_value == 1


def test_shape_errors():
    with pytest.raises(ShapeError):
        lp.LpProblem([1, 2], [[1]], [lp.LE], [1])
    with pytest.raises(ShapeError):
        lp.LpProblem([1], [[1]], [lp.LE], [1, 2])
    with pytest.raises(ShapeError):
        lp.LpProblem([1], [[1]], ["<"], [1])
    with pytest.raises(ShapeError):
        lp.solve(lp.LpProblem([1], [[1]], [lp.LE], [1]), "maximize")


def test_probe_examples(fixtures):
    p = lp.LpProblem([1, 1], [[1, 0], [0, 1]], [lp.LE, lp.LE], [2, 3])
    assert lp.probe_optimal_face(p, lp.MAX, 0) == (2, 2)
    p = lp.LpProblem([1, 1], [[1, 1]], [lp.LE], [1])
    assert lp.probe_optimal_face(p, lp.MAX, 0) == (0, 1)
    A = fixtures["appendix_d3n2"].tensor
    q = cover_problem(A)
    for i in range(3):
        assert lp.probe_optimal_face(q, lp.MIN, i * 2) == (Fraction(1, 2), Fraction(1, 2))


def test_face_range_unbounded_on_face():
    # min x subject to x - y <= 0: the face x = 0 leaves y free
    p = lp.LpProblem([1, 0], [[1, -1]], [lp.LE], [0])
    assert lp.face_ranges(p, lp.MIN, [0, 1]) == {0: (0, 0), 1: (0, None)}


def test_rank_and_determinant():
    assert lp.rank([[1, 2], [2, 4]]) == 1
    assert lp.rank([]) == 0
    assert lp.determinant([[2, 1], [1, 1]]) == 1
    assert lp.determinant([[0, 1], [1, 0]]) == -1
    assert lp.determinant([[1, 2], [2, 4]]) == 0


def test_matches_vertex_enumeration():
    rng = random.Random(11)
    for _ in range(150):
        p = random_problem(rng, rng.randint(1, 5), rng.randint(0, 4))
        s = lp.solve(p, lp.MAX)
        assert s.optimal
        assert p.is_feasible_point(s.values)
        assert s.objective_value == vertex_enumeration_max(p)


def test_strong_duality_random():
    rng = random.Random(7)
    for _ in range(200):
        p = random_problem(rng, rng.randint(1, 12), rng.randint(0, 7))
        primal = lp.solve(p, lp.MAX)
        dual = lp.solve(dual_of(p), lp.MIN)
        assert primal.optimal and dual.optimal
        assert primal.objective_value == dual.objective_value
        # returned multipliers form a dual-feasible certificate
        y = primal.duals
        assert dual_of(p).is_feasible_point(y)
        assert sum(a * b for a, b in zip(y, p.rhs)) == primal.objective_value


def test_basis_is_nonsingular():
    rng = random.Random(3)
    for _ in range(100):
        p = random_problem(rng, rng.randint(1, 6), rng.randint(0, 5))
        s = lp.solve(p, lp.MAX)
        M = lp.standard_form(p)
        sub = [[M[r][c] for c in s.basis] for r in s.basis_rows]
        assert len(s.basis) == len(s.basis_rows)
        assert lp.determinant(sub) != 0
        # nonbasic structural variables sit at zero
        assert all(v == 0 for j, v in enumerate(s.values) if j not in s.basis)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_klee_minty_terminates(n):
    rows, rhs = [], []
    for i in range(n):
        rows.append([2 * 10 ** (i - j) if j < i else (1 if j == i else 0) for j in range(n)])
        rhs.append(100 ** i)
    obj = [10 ** (n - 1 - j) for j in range(n)]
    s = lp.solve(lp.LpProblem(obj, rows, [lp.LE] * n, rhs), lp.MAX)
    assert s.objective_value == 100 ** (n - 1)


def test_degenerate_cycling_example():
    # Beale's classic instance cycles under the textbook pivot rule
    obj = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    rows = [[Fraction(1, 4), -60, Fraction(-1, 25), 9],
            [Fraction(1, 2), -90, Fraction(-1, 50), 3],
            [0, 0, 1, 0]]
    s = lp.solve(lp.LpProblem(obj, rows, [lp.LE] * 3, [0, 0, 1]), lp.MAX)
    assert s.objective_value == Fraction(1, 20)
