from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpoly.errors import DivisibilityError, ParseError
from qpoly.poly import NEG_INF, ONE, X, Y, BiPoly, TriPoly, UniPoly

terms = st.dictionaries(
    st.tuples(st.integers(0, 5), st.integers(0, 5)), st.integers(-10**20, 10**20), max_size=8
)
bipolys = terms.map(BiPoly)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_binomial_square():
    assert (ONE + X * Y) ** 2 == BiPoly({(0, 0): 1, (1, 1): 2, (2, 2): 1})


def test_multiplicative_identity():
    p = Y * (ONE + X) - Y + 1
    assert p * 1 == p
    assert p * ONE == p


def test_cube_of_one_plus_x():
    assert (ONE + X) ** 3 == BiPoly({(0, 0): 1, (1, 0): 3, (2, 0): 3, (3, 0): 1})
    assert UniPoly((1, 1)) ** 3 == UniPoly((1, 3, 3, 1))


def test_coefficient_extraction():
    q = BiPoly({(0, 0): 1, (1, 1): 4, (2, 1): 3, (3, 1): 3, (4, 1): 1, (2, 2): 3, (3, 3): 1})
    assert q.coeff(2, 2) == 3
    assert (ONE + X * Y).coeff_of_y(1) == UniPoly((0, 1))
    assert ((ONE + X * Y) ** 3).deg_y == 3
    assert q.coeff_of_x(4) == UniPoly((0, 1))


def test_zero_polynomial_degrees():
    zero = BiPoly()
    assert zero.deg_x == NEG_INF and zero.deg_y == NEG_INF
    assert UniPoly().degree == NEG_INF
    assert str(zero) == "0"


def test_evaluation():
    q = BiPoly({(0, 0): 1, (1, 1): 4, (2, 1): 3, (3, 1): 3, (4, 1): 1, (2, 2): 3, (3, 3): 1})
    assert q.eval(1, 1) == 16
    assert q.eval(0, 0) == 1
    assert ((ONE + X * Y) ** 2).eval(Fraction(1, 2), 2) == 4
    assert ((ONE + X * Y) ** 2).eval_float(0.5, 2.0) == pytest.approx(4.0)


def test_exact_division():
    assert (X * Y + X * X * Y).exact_div_monomial(1, 1) == ONE + X
    assert (X * X * Y * Y).exact_div_monomial(1, 1) == X * Y
    with pytest.raises(DivisibilityError):
        (ONE + X * Y).exact_div_monomial(1, 0)


def test_human_form_ordering():
    p = BiPoly({(2, 1): 3, (0, 0): 1, (1, 1): 4, (2, 2): -1})
    assert str(p) == "1 + 4*x*y + 3*x^2*y - x^2*y^2"


def test_json_round_trip_and_format():
    p = BiPoly({(0, 0): 1, (1, 1): 2, (2, 1): 10**30})
    data = p.to_dict()
    assert data == {"degx": 2, "terms": [[0, 0, "1"], [1, 1, "2"], [2, 1, str(10**30)]]}
    assert BiPoly.from_json(p.to_json()) == p


@pytest.mark.parametrize("text", ['{"terms": 3}', '[1, 2]', '{"degx": 1, "terms": [[0, 0, "x"]]}', "not json"])
def test_json_rejects_malformed(text):
    with pytest.raises(ParseError):
        BiPoly.from_json(text)


def test_trivariate_monomials():
    t = TriPoly.monomial(1, 0, 0) + TriPoly.monomial(0, 1, 0) * TriPoly.monomial(1, 0, 0)
    assert t.coeff(1, 1, 0) == 1
    assert t.substitute(ONE, X, Y) == ONE + X


@given(bipolys, bipolys, bipolys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a - a == BiPoly()


@given(bipolys, bipolys, rationals, rationals)
def test_evaluation_is_a_ring_map(a, b, x, y):
    assert (a * b).eval(x, y) == a.eval(x, y) * b.eval(x, y)
    assert (a + b).eval(x, y) == a.eval(x, y) + b.eval(x, y)


@given(bipolys, st.integers(0, 4), st.integers(0, 4))
def test_monomial_division_inverts_shift(p, i, j):
    assert p.shift(i, j).exact_div_monomial(i, j) == p


@given(bipolys)
def test_json_round_trip(p):
    assert BiPoly.from_dict(p.to_dict()) == p


def test_dense_and_sparse_products_agree():
    dense = (ONE + X + Y + X * Y) ** 6
    other = BiPoly({(7, 0): 1, (0, 9): -2, (1, 1): 5})
    expected: dict = {}
    for (i, j), c in dense.items():
        for (a, b), d in other.items():
            expected[(i + a, j + b)] = expected.get((i + a, j + b), 0) + c * d
    assert dense * other == BiPoly(expected)
