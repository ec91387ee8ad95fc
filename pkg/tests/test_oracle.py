from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from milnorchi import (
    MapGerm,
    OracleConfig,
    Unstable,
    ZeroOnMesh,
    local_degree,
    parse_polynomial,
    pl_sphere_degree,
    winding_degree,
)
from milnorchi.oracle import icosphere

from conftest import diagonal_germs, invertible_matrices, left_compose

XY = ("x", "y")
XYZ = ("x", "y", "z")


def G(*comps, V=XY):
    return MapGerm(tuple(parse_polynomial(c, V) for c in comps))


EXAMPLE_H1 = ("2*x*z - x^3", "3*y^2 + 2*y*z - y^3", "x^2 + y^2 - z^3")


def test_icosphere_counts():
    for depth in range(3):
        mesh = icosphere(depth)
        assert len(mesh.faces) == 20 * 4 ** depth
        # Euler characteristic of a triangulated sphere
        edges = 3 * len(mesh.faces) // 2
        assert len(mesh.vertices) - edges + len(mesh.faces) == 2


@pytest.mark.parametrize("comps, deg", [
    (("x", "y"), 1),
    (("x", "-y"), -1),
    (("x^2 - y^2", "2*x*y"), 2),
    (("x^3 - 3*x*y^2", "3*x^2*y - y^3"), 3),
    (("x^2", "y"), 0),
    (("y^2 - x^3", "2*y"), -1),
])
def test_winding_examples(comps, deg):
    assert winding_degree(G(*comps)) == deg


@pytest.mark.parametrize("comps, deg", [
    (("x", "y", "z"), 1),
    (("-x", "y", "z"), -1),
    (("x^2 - y^2", "2*x*y", "z"), 2),
    (("x^2 - y^2", "2*x*y", "-z^3"), -2),
    (("x^2", "y", "z"), 0),
    (EXAMPLE_H1, -1),
])
def test_pl_examples(comps, deg):
    assert pl_sphere_degree(G(*comps, V=XYZ)) == deg


def test_example_germ_needs_a_small_sphere():
    # H1 has a second zero near |x| = 0.449, so a sphere of radius 1/2
    # encloses both zeros and their degrees cancel
    H = G(*EXAMPLE_H1, V=XYZ)
    assert pl_sphere_degree(H, OracleConfig(radius=Fraction(1, 4))) == -1
    assert pl_sphere_degree(H, OracleConfig(radius=Fraction(1, 2))) == 0


@pytest.mark.parametrize("comps", [
    ("x^2 - y^2", "2*x*y"),
    ("x^3 + y^2", "y"),
    ("x^4 - y^2", "x*y"),
    ("y^2 - x^3", "x^2 + y^3 - x*y"),
])
@pytest.mark.parametrize("radius", [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)])
def test_winding_radius_independent(comps, radius):
    H = G(*comps)
    assert winding_degree(H, OracleConfig(radius=radius)) == local_degree(H)


@pytest.mark.parametrize("radius", [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)])
def test_pl_radius_independent(radius):
    # weighted homogeneous: 0 is the only zero
    H = G("x^2 - y^2", "2*x*y", "z^3", V=XYZ)
    assert pl_sphere_degree(H, OracleConfig(radius=radius, depth=4)) == 2
    H = G("x^3 - 3*x*y^2", "3*x^2*y - y^3", "z", V=XYZ)
    assert pl_sphere_degree(H, OracleConfig(radius=radius, depth=4)) == 3


def test_zero_on_mesh():
    with pytest.raises(ZeroOnMesh):
        pl_sphere_degree(G("x", "x", "x", V=XYZ))


def test_unstable_when_a_zero_sits_on_the_circle():
    # zeros at +-(1, 2) / (4 sqrt 5), on the sampling circle but never on a sample point
    H = G("y - 2*x", "x^3 + x*y^2 - x/16")
    with pytest.raises(Unstable):
        winding_degree(H, OracleConfig(radius=Fraction(1, 4)))
    assert winding_degree(H, OracleConfig(radius=Fraction(1, 8))) == local_degree(H) == 1


def test_coarse_sampling_is_refined_near_sharp_turns():
    # the image passes within 2.5e-4 of 0, far below the spacing of 3 samples
    H = G("x2^4", "2*x1^5 + 6*x1", V=("x1", "x2"))
    assert winding_degree(H, OracleConfig(radius=Fraction(1, 8), resolution=3)) == 0


def test_bad_arguments():
    with pytest.raises(ValueError):
        winding_degree(G("x", "y", "z", V=XYZ))
    with pytest.raises(ValueError):
        pl_sphere_degree(G("x", "y"))
    with pytest.raises(ValueError):
        OracleConfig(radius=0)


@settings(max_examples=100, deadline=None)
@given(diagonal_germs(2, max_power=4, max_extra=3), invertible_matrices(2))
def test_winding_matches_signature(data, A):
    (H, deg, _), (M, _) = data, A
    H = left_compose(M, H)
    assert winding_degree(H, OracleConfig(radius=Fraction(1, 8))) == local_degree(H)
