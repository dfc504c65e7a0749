import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import tensors
from polyplex.covers import (CoverTable, check_licq, check_upper_indices,
                             classify_big_deficiency, cover_is_unique, cover_weight_at,
                             deficiency, delete_weights, entries_multiple_of, induced_matrix,
                             is_cover, min_cover, structural_checks, upper_indices)
from polyplex.errors import PreconditionError, ShapeError
from polyplex.matching import Polyplex, max_polyplex
from polyplex.tensor import BinaryTensor

F = Fraction
EYE2 = BinaryTensor(np.eye(2, dtype=np.uint8))


def test_cover_table_validation():
    with pytest.raises(ShapeError):
        CoverTable(((1, 0), (1,)))
    with pytest.raises(ShapeError):
        CoverTable(((1, -1),))
    with pytest.raises(ShapeError):
        CoverTable(())
    c = CoverTable(((F(1, 2), 0), (0, 1)))
    assert c.weight == F(3, 2) and c.sorted_rows() == ((F(1, 2), 0), (1, 0))


def test_cover_weight_at_examples(fixtures):
    assert cover_weight_at(CoverTable.zeros(3, 2), (0, 1, 0)) == 0
    lam = fixtures["appendix_d3n2"].cover
    assert cover_weight_at(lam, (0, 0, 0)) == F(3, 2)
    assert cover_weight_at(lam, (0, 0, 1)) == 1
    with pytest.raises(ShapeError):
        cover_weight_at(lam, (0, 0))
    with pytest.raises(ShapeError):
        cover_weight_at(lam, (0, 0, 2))


def test_induced_matrix_examples(fixtures):
    assert induced_matrix(CoverTable.zeros(3, 2)) == BinaryTensor.zeros(3, 2)
    for f in fixtures.values():
        if f.cover is not None and f.name not in ("nonreversible_lambda",):
            assert induced_matrix(f.cover) == f.tensor, f.name


def test_min_cover_examples(fixtures):
    assert min_cover(BinaryTensor.zeros(3, 2))[0] == 0
    w, lam = min_cover(fixtures["appendix_d3n2"].tensor)
    assert w == F(3, 2) and lam.rows == ((F(1, 2), 0),) * 3
    f = fixtures["appendix_d3n4_01"]
    w, lam = min_cover(f.tensor)
    assert w == F(15, 4) and lam.sorted_rows() == f.cover.sorted_rows()


def test_deficiency_examples(fixtures):
    assert deficiency(BinaryTensor.ones(3, 3)) == 0
    assert deficiency(fixtures["appendix_d5n2_03"].tensor) == F(1, 5)
    assert deficiency(fixtures["appendix_d3n4_18"].tensor) == F(1, 8)


def test_uniqueness_examples(fixtures):
    assert cover_is_unique(fixtures["appendix_d3n2"].tensor) == (True, None)
    unique, witness = cover_is_unique(EYE2)
    assert not unique
    _, base = min_cover(EYE2)
    assert is_cover(witness, EYE2) and witness.weight == 2 and witness != base


@given(tensors(d=st.integers(2, 3), n=st.integers(1, 3)))
def test_uniqueness_witness_is_a_second_optimum(A):
    unique, witness = cover_is_unique(A)
    w, base = min_cover(A)
    if unique:
        assert witness is None
    else:
        assert is_cover(witness, A) and witness.weight == w and witness != base


def test_licq_examples(fixtures):
    A = fixtures["appendix_d3n2"].tensor
    _, K = max_polyplex(A)
    assert check_licq(A, K) and check_licq(A, K, over="support")
    K = Polyplex(2, 2, {(0, 0): 1, (1, 1): 1})
    assert not check_licq(EYE2, K)
    assert not check_licq(EYE2, K, over="support")
    # single cell of order 1: both hyperplanes are tight but the cover is not unique
    one = BinaryTensor.ones(2, 1)
    K1 = Polyplex(2, 1, {(0, 0): 1})
    assert not check_licq(one, K1)
    assert not cover_is_unique(one)[0]


def test_licq_preconditions(fixtures):
    A = fixtures["appendix_d3n2"].tensor
    with pytest.raises(PreconditionError):
        check_licq(A, Polyplex(3, 2, {(0, 0, 0): F(1, 2)}))
    with pytest.raises(PreconditionError):
        check_licq(A, Polyplex(3, 2, {(1, 1, 1): 1}))
    with pytest.raises(ValueError):
        check_licq(A, max_polyplex(A)[1], over="cells")


def test_literal_licq_is_not_sufficient_in_general():
    """Tight-plane vectors over all of supp(A) can be independent while the cover is not unique."""
    A = BinaryTensor([[0, 0, 0], [0, 0, 1], [1, 1, 1]])
    _, K = max_polyplex(A)
    assert check_licq(A, K, over="support")
    assert not check_licq(A, K)
    assert not cover_is_unique(A)[0]


@given(tensors(d=st.integers(2, 3), n=st.integers(1, 3)))
def test_licq_is_sufficient(A):
    _, K = max_polyplex(A)
    if check_licq(A, K):
        assert cover_is_unique(A)[0]


def test_upper_indices_examples(fixtures):
    for name in ("appendix_d3n2", "appendix_d3n3_02"):
        assert check_upper_indices(fixtures[name].cover)
    assert check_upper_indices(CoverTable(((F(1, 3),),) * 3))


def test_upper_index_criterion_fails_off_extremal_matrices():
    """J_2 with the cover (1,1)/(0,0): every weight-1 cell is upper, yet the cover is not unique."""
    J = BinaryTensor.ones(2, 2)
    cover = CoverTable(((1, 1), (0, 0)))
    assert set(upper_indices(cover)) == set(J.indices())
    assert check_upper_indices(cover)
    assert not cover_is_unique(J)[0]


def test_upper_indices_definition_by_hand():
    cover = CoverTable(((F(1, 2), 0), (F(1, 2), 0)))
    # (0,0) has weight 1 and dominates every other cell, all of weight < 1
    assert upper_indices(cover) == [(0, 0)]


def test_structural_checks_examples(fixtures):
    for f in fixtures.values():
        if f.kind == "core" and f.n == 4:
            assert structural_checks(f.tensor, f.cover, f.delta).passed, f.name
    f = fixtures["appendix_d5n2_01"]
    assert structural_checks(f.tensor, f.cover, f.delta).passed
    assert set(f.cover.entries()) <= {0, F(1, 4), F(3, 4)}
    J_minus = BinaryTensor([[1, 1], [0, 0]])
    report = structural_checks(J_minus, CoverTable(((1, 0), (0, 0))), 1)
    assert report.passed and report.weight_one_per_hyperplane is None


def test_structural_check_failure_identity():
    # the identity has a polydiagonal; with deficiency 0 the battery certifies nothing extremal
    report = structural_checks(EYE2, CoverTable(((1, 1), (0, 0))), 0)
    assert not report.zero_in_each_row
    assert "zero_in_each_row" in report.failures()


def test_structural_checks_preconditions(fixtures):
    f = fixtures["appendix_d3n2"]
    with pytest.raises(PreconditionError):
        structural_checks(f.tensor, CoverTable.zeros(3, 2), f.delta)
    with pytest.raises(PreconditionError):
        structural_checks(f.tensor, CoverTable(((1, 0), (1, 0), (0, 0))), f.delta)
    with pytest.raises(PreconditionError):
        structural_checks(f.tensor, f.cover, F(1, 3))


def test_classify_big_deficiency(fixtures):
    f = fixtures["appendix_d3n2"]
    r = classify_big_deficiency(f.delta, f.cover)
    assert r.consistent and set(f.cover.entries()) <= {0, F(1, 2)}
    f = fixtures["appendix_d4n2"]
    assert classify_big_deficiency(f.delta, f.cover).entries_ok
    assert set(f.cover.entries()) <= {0, F(1, 3), F(2, 3)}
    assert not classify_big_deficiency(F(2, 3)).consistent
    assert not classify_big_deficiency(F(2, 5)).consistent
    assert classify_big_deficiency(F(1, 4)).consistent
    assert not classify_big_deficiency(1, CoverTable(((F(1, 2), 0),))).consistent


def test_delete_weights_examples(fixtures):
    lam = fixtures["appendix_d3n2"].cover
    assert delete_weights(lam, (1, 1, 1)).rows == ((F(1, 2),),) * 3
    assert delete_weights(CoverTable.zeros(3, 3), (0, 1, 2)) == CoverTable.zeros(3, 2)
    with pytest.raises(ShapeError):
        delete_weights(CoverTable.zeros(2, 1), (0, 0))
    for f in fixtures.values():
        if f.cover is None or f.name == "nonreversible_lambda":
            continue
        for alpha in itertools.islice(f.tensor.indices(), 10):
            out = delete_weights(f.cover, alpha)
            assert out.weight == f.cover.weight - cover_weight_at(f.cover, alpha)


def test_multiples_of_delta(fixtures):
    for f in fixtures.values():
        if f.delta is not None:
            assert entries_multiple_of(f.cover, f.delta), f.name
    assert not entries_multiple_of(CoverTable(((F(1, 2), 0),)), F(1, 3))


@given(tensors(d=st.integers(2, 3), n=st.integers(1, 3)))
def test_optimal_cover_properties(A):
    w, lam = min_cover(A)
    assert is_cover(lam, A)
    assert w == lam.weight <= A.n
    assert deficiency(A) == A.n - w
