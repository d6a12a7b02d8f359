from fractions import Fraction

import pytest
from hypothesis import given

from conftest import two_step_algebras
from nilsym import InvalidAlgebraError, MalformedInputError, nilindex
from nilsym.catalog import heisenberg, list_entries
from nilsym.deform import TwoCochain
from nilsym.fileformat import (
    form_terms,
    format_matrix,
    parse_algebra,
    parse_algebra_unchecked,
    parse_cochain,
    parse_matrix,
    parse_one_form,
    parse_rational,
    parse_two_form,
    serialize_algebra,
    serialize_cochain,
)


class TestRational:
    @pytest.mark.parametrize("text,value", [("3", 3), ("-2", -2), ("1/2", Fraction(1, 2)), ("-4/6", Fraction(-2, 3))])
    def test_ok(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["1.5", "a", "1/0", "1/-2", ""])
    def test_bad(self, text):
        with pytest.raises(MalformedInputError):
            parse_rational(text)


class TestAlgebraFile:
    def test_h3(self):
        L = parse_algebra("dim 3\n[1,2] = 3:1")
        assert dict(L.constants) == dict(heisenberg(1).constants)

    def test_solvable(self):
        L = parse_algebra("dim 2\n[1,2] = 1:1/2")
        assert L.dim == 2 and nilindex(L) is None

    def test_comments_and_name(self):
        L = parse_algebra("# a comment\nalgebra h3  # trailing\ndim 3\n\n[1,2] = 3:1\n")
        assert L.name == "h3"

    def test_reversed_pair(self):
        with pytest.raises(MalformedInputError) as exc:
            parse_algebra("dim 3\n[2,1] = 3:1")
        assert exc.value.line == 2 and exc.value.column == 2

    @pytest.mark.parametrize("text,line", [
        ("dim 3\n[1,4] = 3:1", 2),
        ("dim 3\n[1,2] = 3:1\n[1,2] = 3:2", 3),
        ("dim 3\n[1,2] = 3:x", 2),
        ("dim 3\n[1,2] = 3:1/0", 2),
        ("dim 3\n[1,2] = 3:1,", 2),
        ("dim 3\n[1,2] = 3:1, 3:2", 2),
        ("dim 3\n[1,2] = 4:1", 2),
        ("[1,2] = 3:1\ndim 3", 1),
        ("algebra x\n", 2),
        ("dim 3\nbogus", 2),
        ("dim 3\ndim 4", 2),
    ])
    def test_located_errors(self, text, line):
        with pytest.raises(MalformedInputError) as exc:
            parse_algebra(text)
        assert exc.value.line == line

    def test_jacobi_failure(self):
        with pytest.raises(InvalidAlgebraError) as exc:
            parse_algebra("dim 3\n[1,2] = 1:1\n[1,3] = 3:1")
        assert exc.value.violations

    def test_unchecked(self):
        L = parse_algebra_unchecked("dim 3\n[1,2] = 1:1\n[1,3] = 3:1")
        assert L.dim == 3

    @pytest.mark.parametrize("entry", list_entries(), ids=lambda e: e.name)
    def test_round_trip_catalog(self, entry):
        text = serialize_algebra(entry.algebra)
        again = parse_algebra(text)
        assert again == entry.algebra
        assert serialize_algebra(again) == text

    @given(two_step_algebras())
    def test_round_trip_random(self, L):
        assert parse_algebra(serialize_algebra(L)) == L

    def test_canonical_order(self):
        text = "dim 4\n[2,3] = 4:1\n[1,2] = 4:2, 3:1\n"
        assert serialize_algebra(parse_algebra(text)) == "dim 4\n[1,2] = 3:1, 4:2\n[2,3] = 4:1\n"


class TestOtherFormats:
    def test_cochain(self):
        phi = parse_cochain("dim 8\n[2,4] = 7:1\n")
        assert phi == TwoCochain(8, {(1, 3): {6: 1}})
        assert serialize_cochain(phi) == "dim 8\n[2,4] = 7:1\n"

    def test_matrix(self):
        M = parse_matrix("1 0\n0 1/2\n", 2)
        assert M == [[1, 0], [0, Fraction(1, 2)]]
        assert format_matrix(M) == "1 0\n0 1/2\n"

    def test_matrix_shape(self):
        with pytest.raises(MalformedInputError):
            parse_matrix("1 0\n0\n", 2)
        with pytest.raises(MalformedInputError):
            parse_matrix("1 0\n0 1\n", 3)

    def test_two_form(self):
        theta = parse_two_form("1-8:1, 2-7:1, 3-6:-1, 4-5:1", 8)
        assert form_terms(theta) == [[1, 8, "1"], [2, 7, "1"], [3, 6, "-1"], [4, 5, "1"]]

    def test_two_form_reversed(self):
        assert parse_two_form("2-1:3", 2).coeffs == {(0, 1): -3}

    def test_two_form_bad(self):
        with pytest.raises(MalformedInputError):
            parse_two_form("1-1:1", 2)
        with pytest.raises(MalformedInputError):
            parse_two_form("1:1", 2)

    def test_one_form(self):
        assert parse_one_form("3:1", 8).coeffs == {(2,): 1}
        with pytest.raises(MalformedInputError):
            parse_one_form("9:1", 8)
