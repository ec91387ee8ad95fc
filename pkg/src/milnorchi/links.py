"""Euler characteristics of links of real polynomial zero sets.

Weighted homogeneous polynomials are handled by Szafraniec's construction:
with p the least positive integer such that 2p > d and every weight divides
p, put a_i = p / d_i, omega = sum x_i^(2 a_i) / (2 a_i), g_1 = f - omega,
g_2 = -f - omega and H_i = grad g_i.  Then

    chi(L) = 2 - (deg_0 H_1 + deg_0 H_2 + chi(S^(n-1)))

and for odd d the two degrees agree, so chi(L) = 2 (1 - deg_0 H_1) - chi(S^(n-1)).

Zero sets of several functions go through f = sum f_i^2 and
g = f - (x_1^2 + ... + x_n^2)^k, where chi(L) = 1 - deg_0 grad g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .degree import local_degree
from .errors import (
    ConsistencyFail,
    EvenDegree,
    KExhausted,
    NonIsolatedZero,
    NotWeightedHomogeneous,
    RegularPoint,
)
from .polynomial import MapGerm, Polynomial, WeightedType, check_weighted_type, gradient
from .standard_basis import LOCAL, compute_standard_basis

__all__ = [
    "SzafraniecData",
    "LinkEulerResult",
    "sphere_chi",
    "szafraniec_setup",
    "link_euler",
    "link_euler_odd",
    "variety_link_euler",
    "smooth_link_chi",
    "link_chi",
]


def sphere_chi(dim: int) -> int:
    """chi(S^dim); chi(S^-1) = chi(empty set) = 0."""
    if dim < 0:
        return 0
    return 2 if dim % 2 == 0 else 0


@dataclass(frozen=True)
class SzafraniecData:
    f: Polynomial
    weighted_type: WeightedType
    p: int
    a: tuple
    omega: Polynomial
    g1: Polynomial
    g2: Polynomial
    H1: MapGerm
    H2: MapGerm


@dataclass(frozen=True)
class LinkEulerResult:
    chi: int
    deg1: int
    deg2: int
    sphere_chi: int


def _has_linear_part(f):
    return any(sum(m) == 1 for m in f.terms)


def szafraniec_setup(f: Polynomial, w: WeightedType) -> SzafraniecData:
    if not check_weighted_type(f, w):
        raise NotWeightedHomogeneous(f"{f} is not of type {w.weights};{w.degree}")
    if f.is_zero():
        raise NotWeightedHomogeneous("the zero polynomial has no link")
    if f.constant_term():
        raise RegularPoint(f"f(0) != 0 for {f}")
    if _has_linear_part(f):
        raise RegularPoint(f"df(0) != 0 for {f}")
    d = w.degree
    lcm = 1
    for di in w.weights:
        lcm = lcm * di // math.gcd(lcm, di)
    p = lcm * (d // (2 * lcm) + 1)
    a = tuple(p // di for di in w.weights)
    V = f.variables
    omega = Polynomial(V, {
        tuple(2 * ai if j == i else 0 for j in range(len(V))): Fraction(1, 2 * ai)
        for i, ai in enumerate(a)})
    g1 = f - omega
    g2 = -f - omega
    return SzafraniecData(f, w, p, a, omega, g1, g2, gradient(g1), gradient(g2))


def _degree(H, label):
    try:
        return local_degree(H)
    except NonIsolatedZero as exc:
        raise NonIsolatedZero(
            f"{label} has a non-isolated zero, which contradicts Szafraniec's finiteness lemma: {exc}"
        ) from None


def link_euler(f: Polynomial, w: WeightedType) -> LinkEulerResult:
    """chi of the link of {f = 0} from the degrees of both H_1 and H_2."""
    data = szafraniec_setup(f, w)
    n = f.nvars
    d1 = _degree(data.H1, "H1")
    d2 = _degree(data.H2, "H2")
    s = sphere_chi(n - 1)
    return LinkEulerResult(chi=2 - (d1 + d2 + s), deg1=d1, deg2=d2, sphere_chi=s)


def link_euler_odd(f: Polynomial, w: WeightedType) -> LinkEulerResult:
    """Odd-degree variant: chi(L) = 2 (1 - deg_0 H_1) - chi(S^(n-1)).

    deg_0 H_2 is computed as well and must equal deg_0 H_1.
    """
    if w.degree % 2 == 0:
        raise EvenDegree(f"weighted degree {w.degree} is even")
    data = szafraniec_setup(f, w)
    n = f.nvars
    d1 = _degree(data.H1, "H1")
    d2 = _degree(data.H2, "H2")
    if d1 != d2:
        raise ConsistencyFail(f"odd degree but deg H1 = {d1} != deg H2 = {d2}")
    s = sphere_chi(n - 1)
    return LinkEulerResult(chi=2 * (1 - d1) - s, deg1=d1, deg2=d2, sphere_chi=s)


def smooth_link_chi(f: Polynomial) -> int:
    """chi of the link of {f = 0} when df(0) != 0: the link is S^(n-2)."""
    if f.constant_term():
        raise RegularPoint("f(0) != 0; 0 is not on the zero set")
    if not _has_linear_part(f):
        raise ValueError("df(0) = 0; the zero set may be singular at 0")
    return sphere_chi(f.nvars - 2)


def variety_link_euler(f_list: Sequence[Polynomial], k_max: int = 20,
                       confirm: bool = True):
    """chi of the link of {f_1 = ... = f_s = 0} via g = sum f_i^2 - |x|^(2k).

    Returns ``(chi, k)``.  The search starts at the least k with 2k > deg(f):
    for smaller k the ball term can dominate f along directions where f is
    flat (x^2 + y^6 gives a wrong value at k = 3 and k = 4 alike).  k is
    then increased until grad g has a finite local algebra.  With
    ``confirm``, the value must be reproduced at the next admissible k;
    otherwise the search continues.

    When grad f and |x|^2 have a common complex zero curve through 0, grad g
    vanishes on it for every k >= 2 and KExhausted is raised at once.
    """
    f_list = list(f_list)
    if not f_list:
        raise ValueError("need at least one function")
    V = f_list[0].variables
    for fi in f_list:
        if fi.variables != V:
            raise ValueError("functions over different variables")
        if fi.constant_term():
            raise RegularPoint(f"{fi} does not vanish at 0")
    f = sum((fi * fi for fi in f_list), Polynomial(V))
    if f.is_zero():
        raise NonIsolatedZero("all functions are identically zero")
    r2 = sum((Polynomial.variable(V, v) ** 2 for v in V), Polynomial(V))
    k = max(1, f.degree() // 2 + 1)
    # on common complex zeros of grad f and |x|^2, grad g vanishes for every
    # k >= 2; if they form a curve no k can give a finite local algebra
    obstruction = list(gradient(f)) + [r2]
    if not compute_standard_basis([p for p in obstruction if p], LOCAL).is_finite():
        raise KExhausted(
            "grad f and |x|^2 share a complex zero curve; grad g is not finite for any k")
    pending = None  # (chi, k) waiting for confirmation
    while k <= k_max:
        g = f - r2 ** k
        try:
            chi = 1 - local_degree(gradient(g))
        except NonIsolatedZero:
            k += 1
            continue
        if not confirm:
            return chi, k
        if pending is not None and pending[0] == chi:
            return pending
        pending = (chi, k)
        k += 1
    raise KExhausted(f"no stable admissible k <= {k_max} for {f_list}")


def link_chi(f: Polynomial, w: WeightedType | None = None, k_max: int = 20):
    """chi of the link of {f = 0}, choosing a method.

    Returns ``(chi, method)`` with method one of "smooth" (df(0) != 0),
    "szafraniec-odd", "szafraniec" (weighted homogeneous) or "variety"
    (the |x|^(2k) perturbation).
    """
    if f.constant_term():
        raise RegularPoint(f"f(0) != 0 for {f}; 0 is not on the zero set")
    if _has_linear_part(f):
        return smooth_link_chi(f), "smooth"
    if w is not None:
        if w.degree % 2:
            return link_euler_odd(f, w).chi, "szafraniec-odd"
        return link_euler(f, w).chi, "szafraniec"
    chi, _ = variety_link_euler([f], k_max=k_max)
    return chi, "variety"
