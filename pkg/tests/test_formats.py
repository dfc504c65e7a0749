from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import tensors
from polyplex import formats
from polyplex.covers import CoverTable, min_cover
from polyplex.errors import FormatError
from polyplex.matching import Polyplex, max_polyplex

F = Fraction


def test_tensor_layout():
    text = formats.format_tensor(formats.parse_tensor("tensor 3 2\n1 1\n1 0\n\n1 0\n0 0\n"))
    assert text == "tensor 3 2\n1 1\n1 0\n\n1 0\n0 0\n"
    A = formats.parse_tensor("# comment\ntensor 2 2\n0 1\n  # another\n0 0\n")
    assert A.support() == [(0, 1)]


@given(tensors(d=st.integers(1, 4), n=st.integers(1, 3)))
def test_tensor_round_trip(A):
    assert formats.parse_tensor(formats.format_tensor(A)) == A


@given(tensors(d=st.integers(2, 3), n=st.integers(1, 3)))
def test_cover_and_polyplex_round_trip(A):
    _, cover = min_cover(A)
    assert formats.parse_cover(formats.format_cover(cover)) == cover
    _, K = max_polyplex(A)
    assert formats.parse_polyplex(formats.format_polyplex(K)) == K


def test_rational_rendering():
    assert formats.format_rational(F(2, 4)) == "1/2"
    assert formats.format_rational(F(3, 1)) == "3"
    assert formats.format_cover(CoverTable(((F(1, 2), 0),))) == "cover 1 2\n1/2 0\n"
    assert formats.format_polyplex(Polyplex(2, 2, {(0, 1): 1})) == "polyplex 2 2\n1 2 1/1\n"
    assert formats.parse_cover("cover 1 2\n2/4 3\n").rows == ((F(1, 2), 3),)


@pytest.mark.parametrize("text,line,column", [
    ("tensor 2 2\n1 0\n0 2\n", 3, 3),
    ("tensor 2 2\n1 0\n0\n", None, None),
    ("tensor 2 2\n1 0 1\n0 0 1\n", 3, 3),
    ("cover 2 2\n1 0\n", 1, 1),
    ("tensor 2 x\n", 1, 10),
    ("matrix 2 2\n", 1, 1),
    ("tensor 2\n", 1, 1),
])
def test_tensor_errors_carry_positions(text, line, column):
    with pytest.raises(FormatError) as err:
        formats.parse_tensor(text)
    assert (err.value.line, err.value.column) == (line, column)


@pytest.mark.parametrize("text,line,column", [
    ("cover 2 2\n1 -1\n0 0\n", 2, 3),
    ("cover 2 2\n1 1/0\n0 0\n", 2, 3),
    ("cover 2 2\n1 0 0\n0 0\n", 2, 1),
    ("cover 2 2\n1 0\n", None, None),
    ("cover 2 2\n1 0.5\n0 0\n", 2, 3),
])
def test_cover_errors(text, line, column):
    with pytest.raises(FormatError) as err:
        formats.parse_cover(text)
    assert (err.value.line, err.value.column) == (line, column)


@pytest.mark.parametrize("text,line,column", [
    ("polyplex 2 2\n1 3 1/2\n", 2, 3),
    ("polyplex 2 2\n1 1 1/2\n1 1 1/2\n", 3, 1),
    ("polyplex 2 2\n1 1\n", 2, 1),
    ("polyplex 2 2\n1 1 x\n", 2, 5),
])
def test_polyplex_errors(text, line, column):
    with pytest.raises(FormatError) as err:
        formats.parse_polyplex(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_error_message_mentions_position():
    with pytest.raises(FormatError, match="line 3, column 3"):
        formats.parse_tensor("tensor 2 2\n1 0\n0 2\n")


def test_read_dispatches_on_header(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("# note\ncover 1 1\n1\n")
    assert formats.read(p) == CoverTable(((1,),))
    p.write_text("polyplex 1 1\n1 1/1\n")
    assert formats.read(p) == Polyplex(1, 1, {(0,): 1})
    p.write_text("graph 1 1\n")
    with pytest.raises(FormatError):
        formats.read(p)
    p.write_text("# only comments\n")
    with pytest.raises(FormatError):
        formats.read(p)


def test_fixture_files_parse(fixtures):
    from polyplex.search import fixture_path
    f = fixtures["appendix_d3n2"]
    assert formats.read(fixture_path("appendix_d3n2.txt")) == f.tensor
    assert formats.read(fixture_path("appendix_d3n2_cover.txt")) == f.cover
