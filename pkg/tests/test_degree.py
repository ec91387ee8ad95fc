from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from milnorchi import (
    MapGerm,
    NonIsolatedZero,
    Polynomial,
    exact_signature,
    gram_form,
    jacobian_determinant,
    local_degree,
    parse_polynomial,
)
from milnorchi.degree import admissible_functionals, local_algebra

from conftest import (
    diagonal_germs,
    invertible_matrices,
    left_compose,
    right_compose,
    univariate_degree,
    var_names,
)

XY = ("x", "y")


def G(*comps, V=XY):
    return MapGerm(tuple(parse_polynomial(c, V) for c in comps))


@pytest.mark.parametrize("comps, deg", [
    (("x", "y"), 1),
    (("2*x", "-2*y"), -1),
    (("x^2 - y^2", "2*x*y"), 2),
    (("y^2 - x^3", "2*y"), -1),
    (("x^2", "y"), 0),
    (("x^3", "y"), 1),
    (("x^3 - 3*x*y^2", "3*x^2*y - y^3"), 3),
    (("x^2 + y^2", "2*y"), 0),
])
def test_known_degrees(comps, deg):
    assert local_degree(G(*comps)) == deg


def test_example_germ_in_three_variables():
    H = G("2*x*z - x^3", "3*y^2 + 2*y*z - y^3", "x^2 + y^2 - z^3", V=("x", "y", "z"))
    assert local_degree(H) == -1


def test_non_isolated_zero():
    with pytest.raises(NonIsolatedZero):
        local_degree(G("x^2", "x*y"))


def test_jacobian_determinant():
    assert jacobian_determinant(G("x^2 - y^2", "2*x*y")) == parse_polynomial("4*x^2 + 4*y^2", XY)
    V = ("x", "y", "z")
    assert jacobian_determinant(G("y", "z", "x", V=V)) == 1


def test_exact_signature():
    assert exact_signature([[0, 1], [1, 0]]).signature == 0
    r = exact_signature([[1, 2, 0], [2, 1, 0], [0, 0, 0]])
    assert (r.n_plus, r.n_minus, r.n_zero) == (1, 1, 1)
    r = exact_signature([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert (r.n_plus, r.n_minus) == (2, 1)
    with pytest.raises(ValueError):
        exact_signature([[1, 2], [3, 1]])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_signature_agrees_with_eigenvalues(rows):
    import numpy as np
    A = [[Fraction(rows[i][j] + rows[j][i]) for j in range(4)] for i in range(4)]
    r = exact_signature(A)
    ev = np.linalg.eigvalsh(np.array(A, dtype=float))
    assert r.n_plus == int((ev > 1e-9).sum())
    assert r.n_minus == int((ev < -1e-9).sum())


def test_gram_matrix_is_symmetric_and_phi_of_jacobian_positive():
    form = gram_form(G("x^2 - y^2", "2*x*y"))
    M = form.matrix
    assert all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(len(M)))
    phi_J = sum(p * j for p, j in zip(form.functional, form.jacobian))
    assert phi_J > 0


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: diagonal_germs(n, max_power=4, max_extra=3)))
def test_degree_of_dominated_diagonal_germs(data):
    H, deg, mu = data
    assert local_degree(H) == deg


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: diagonal_germs(n, max_power=4, max_extra=3)))
def test_signature_independent_of_functional(data):
    H, deg, _ = data
    alg = local_algebra(H)
    J = alg.coordinates(jacobian_determinant(H))
    choices = admissible_functionals(alg, J)
    values = set()
    for i in range(len(choices)):
        sig = exact_signature(gram_form(H, choice=i, alg=alg).matrix)
        assert sig.n_zero == 0
        values.add(sig.signature)
    assert values == {deg}


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3).flatmap(
    lambda n: st.tuples(diagonal_germs(n, max_power=3, max_extra=2), invertible_matrices(n))))
def test_orientation_law_left(data):
    (H, deg, _), (A, detA) = data
    s = 1 if detA > 0 else -1
    assert local_degree(left_compose(A, H)) == s * deg


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3).flatmap(
    lambda n: st.tuples(diagonal_germs(n, max_power=3, max_extra=1), invertible_matrices(n, -1, 1))))
def test_orientation_law_right(data):
    (H, deg, _), (B, detB) = data
    s = 1 if detB > 0 else -1
    assert local_degree(right_compose(H, B)) == s * deg


def _split_sum(H, K):
    """H(x) x K(y) on disjoint variables."""
    n, m = H.n, K.n
    V = var_names(n + m)
    comps = [h.map_variables(V, list(range(n))) for h in H]
    comps += [k.map_variables(V, list(range(n, n + m))) for k in K]
    return MapGerm(tuple(comps))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: diagonal_germs(n, max_power=3, max_extra=2)),
       st.integers(1, 2).flatmap(lambda n: diagonal_germs(n, max_power=3, max_extra=2)))
def test_multiplicativity_on_split_variables(a, b):
    H, _, _ = a
    K, _, _ = b
    # scramble H first so the factors are not diagonal
    A = [[Fraction(1), Fraction(1)], [Fraction(-1), Fraction(2)]] if H.n == 2 else [[Fraction(-2)]]
    H = left_compose(A, H)
    dH, dK = local_degree(H), local_degree(K)
    assert local_degree(_split_sum(H, K)) == dH * dK


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 9), st.integers(-5, 5).filter(bool), st.integers(0, 3))
def test_univariate_law(k, c, extra):
    V = ("t",)
    p = Polynomial(V, {(k,): Fraction(c), (k + 1 + extra,): Fraction(1, 3)})
    d = local_degree(MapGerm((p,)))
    assert d == univariate_degree(c, k)
    assert abs(d) == k % 2


def test_every_admissible_functional_is_nondegenerate():
    H = G("x^2 - y^3", "x*y")
    alg = local_algebra(H)
    choices = admissible_functionals(alg, alg.coordinates(jacobian_determinant(H)))
    assert choices
    for i in range(len(choices)):
        sig = exact_signature(gram_form(H, choice=i, alg=alg).matrix)
        assert sig.n_zero == 0
        assert sig.signature == local_degree(H)


def test_truncation_dropping_a_pair_member():
    # found by hypothesis: a basis element is dropped once m^c is certified
    # while critical pairs still refer to it
    V = var_names(3)
    H = MapGerm(tuple(parse_polynomial(s, V) for s in ("x1^5 + x1^2", "x2^2", "x1^4 + x3^3")))
    B = [[1, -1, 1], [1, 0, 0], [-1, -1, 0]]
    B = [[Fraction(b) for b in row] for row in B]
    assert local_degree(right_compose(H, B)) == 0
