from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from milnorchi import (
    GermError,
    MapGerm,
    Polynomial,
    PolynomialParseError,
    WeightedType,
    check_weighted_type,
    evaluate,
    gradient,
    parse_polynomial,
)
from milnorchi.polynomial import euler_defect

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(s, V=XY):
    return parse_polynomial(s, V)


def test_parse_and_print_round_trip():
    p = P("3*x^2*y - y^3/2 + 1")
    assert p.terms == {(2, 1): 3, (0, 3): Fraction(-1, 2), (0, 0): 1}
    assert str(p) == "3*x^2*y - 1/2*y^3 + 1"
    assert P(str(p)) == p


def test_print_order_is_grevlex_descending():
    g = parse_polynomial("z1*(x1^2 - x2^2) - 2*z2*x1*x2 + y1^2 - y2^2",
                         ("x1", "x2", "y1", "y2", "z1", "z2"))
    assert str(g) == "x1^2*z1 - x2^2*z1 - 2*x1*x2*z2 + y1^2 - y2^2"


def test_parentheses_and_powers():
    assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("-(x - 1)*(x + 1)") == P("1 - x^2")
    assert P("2/4*x") == P("1/2*x")


@pytest.mark.parametrize("text, column", [
    ("x +* y", 4),
    ("x y", 3),
    ("x^-1", 3),
    ("x^y", 3),
    ("0.5*x", 1),
    ("w + x", 1),
    ("x/y", 3),
    ("x^2^3", 4),
    ("(x + y", 7),
    ("", 1),
    ("x/0", 3),
])
def test_parse_errors_report_column(text, column):
    with pytest.raises(PolynomialParseError) as info:
        P(text)
    assert info.value.position + 1 == column
    assert f"column {column}" in str(info.value)


def test_arithmetic():
    p, q = P("x + y"), P("x - y")
    assert p * q == P("x^2 - y^2")
    assert p - p == 0
    assert (p ** 3).degree() == 3
    assert P("x^2*y + x").order() == 1
    assert Polynomial(XY).degree() == -1
    assert p / 2 == P("1/2*x + 1/2*y")


def test_rejects_float_coefficients():
    with pytest.raises(TypeError):
        Polynomial(XY, {(1, 0): 0.5})


def test_derivative_and_evaluate():
    p = P("x^3*y - 2*y^2")
    assert p.diff("x") == P("3*x^2*y")
    assert p.diff("y") == P("x^3 - 4*y")
    assert evaluate(p, (2, Fraction(1, 2))) == 4 - Fraction(1, 2)
    assert p(2, Fraction(1, 2)) == Fraction(7, 2)


def test_gradient_germ_and_constant_check():
    g = gradient(P("x^2 - y^2"))
    assert g.components == (P("2*x"), P("-2*y"))
    with pytest.raises(GermError):
        gradient(P("x + y^2"))
    with pytest.raises(GermError):
        MapGerm((P("x"), P("y", XYZ)))
    with pytest.raises(GermError):
        MapGerm((P("x"),))


def test_weighted_type_examples():
    V6 = ("x1", "x2", "y1", "y2", "z1", "z2")
    g = parse_polynomial("z1*(x1^2 - x2^2) - 2*z2*x1*x2 + y1^2 - y2^2", V6)
    assert check_weighted_type(g, WeightedType((2, 2, 3, 3, 2, 2), 6))
    assert not check_weighted_type(g, WeightedType((1, 1, 1, 1, 1, 1), 3))
    assert check_weighted_type(P("z*x^2 + z*y^2 + y^3", XYZ), WeightedType((1, 1, 1), 3))
    with pytest.raises(ValueError):
        WeightedType((1, 0), 2)


@st.composite
def weighted_homogeneous(draw):
    n = draw(st.integers(1, 3))
    V = tuple("xyz"[:n])
    w = tuple(draw(st.integers(1, 3)) for _ in range(n))
    d = draw(st.integers(1, 8))
    # all monomials of weighted degree d
    mons = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                mons.append(tuple(acc))
            return
        for a in range(left // w[i] + 1):
            rec(i + 1, left - a * w[i], acc + [a])

    rec(0, d, [])
    terms = {m: Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3))) for m in mons}
    return Polynomial(V, terms), WeightedType(w, d)


@settings(max_examples=150, deadline=None)
@given(weighted_homogeneous())
def test_euler_relation_holds_for_weighted_homogeneous(data):
    f, w = data
    assert euler_defect(f, w).is_zero()
    assert check_weighted_type(f, w)


@settings(max_examples=100, deadline=None)
@given(weighted_homogeneous(), st.integers(1, 3))
def test_euler_relation_detects_wrong_type(data, bump):
    f, w = data
    if f.is_zero():
        return
    wrong = WeightedType(w.weights, w.degree + bump)
    assert not check_weighted_type(f, wrong)
    assert not euler_defect(f, wrong).is_zero()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-9, 9)), max_size=6))
def test_print_parse_round_trip_random(terms):
    p = Polynomial(XY, {})
    for a, b, c in terms:
        p = p + Polynomial.monomial(XY, (a, b), Fraction(c, 7))
    assert P(str(p)) == p
